#include "figures.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "optimize.hpp"
#include "translate.hpp"
#include "util.hpp"

namespace cfkit {

namespace {

DiscreteMac quantized_two_user(double P, const std::vector<double>& xmap,
                               const Pmf& pmf) {
  GaussianMac mac = builtin_sym_gaussian(P);
  std::vector<SymbolMapping> maps{SymbolMapping::reals(xmap),
                                  SymbolMapping::reals(xmap)};
  std::vector<Pmf> pmfs{pmf, pmf};
  check_power(mac, maps, pmfs);
  OutputQuantizer quant = OutputQuantizer::auto_for(mac, maps, pmfs);
  return induced_channel(mac, maps, quant);
}

std::vector<double> pam4_map(double P) {
  double s = std::sqrt(P / 5.0);
  return {-3 * s, -s, s, 3 * s};
}

}  // namespace

CfProblem gaussian_field_problem(double P, int q, const std::vector<double>& xmap,
                                 const Pmf& pmf) {
  DiscreteMac induced = quantized_two_user(P, xmap, pmf);
  auto field = std::make_shared<const FiniteField>(q);
  std::vector<int64_t> labels(pmf.size());
  std::iota(labels.begin(), labels.end(), 0);
  return CfProblem::make(std::move(induced), {pmf, pmf}, {labels, labels}, field);
}

CfProblem gaussian_integer_problem(double P, const std::vector<int64_t>& labels,
                                   const std::vector<double>& xmap,
                                   const Pmf& pmf, int prime_q) {
  DiscreteMac induced = quantized_two_user(P, xmap, pmf);
  auto field = std::make_shared<const FiniteField>(prime_q);
  std::vector<int64_t> field_labels;
  for (int64_t v : labels) field_labels.push_back(field->from_signed(v));
  return CfProblem::make(std::move(induced), {pmf, pmf},
                         {field_labels, field_labels}, field);
}

double series_upper(double P) { return std::log2(1.0 + P); }
double series_iid(double P) { return 0.5 * std::log2(1.0 + 2.0 * P); }

double series_cor1(double P) {
  return max_sum_rate(region_cor1({1, 1}, {P, P}, {1, 1}, {1, 1}));
}

double series_thm1_bpsk(double P) {
  double s = std::sqrt(P);
  CfProblem prob =
      gaussian_field_problem(P, 2, {-s, s}, Pmf::uniform(2));
  return max_sum_rate(region_thm1(prob, {1, 1}));
}

double series_thm1_pam4(double P) {
  CfProblem prob = gaussian_field_problem(P, 4, pam4_map(P), Pmf::uniform(4));
  return max_sum_rate(region_thm1(prob, {1, 1}));
}

double series_thm2_pam4(double P) {
  std::vector<int64_t> labels{-3, -1, 1, 3};
  TranslationPlan plan = min_prime_q({{1, 1}}, {labels, labels});
  CfProblem prob =
      gaussian_integer_problem(P, labels, pam4_map(P), Pmf::uniform(4), plan.q);
  return max_sum_rate(region_thm1(prob, {1, 1}));
}

TernaryPoint series_thm2_ternary(double P) {
  std::vector<int64_t> labels{-1, 0, 1};
  TranslationPlan plan = min_prime_q({{1, 1}}, {labels, labels});
  auto rate_at = [&](double p) {
    Pmf pmf({(1 - p) / 2, p, (1 - p) / 2});
    double s = std::sqrt(P / (1 - p));
    CfProblem prob =
        gaussian_integer_problem(P, labels, {-s, 0.0, s}, pmf, plan.q);
    return max_sum_rate(region_thm1(prob, {1, 1}));
  };
  const double step = 0.01;
  const double lo = 0.02, hi = 0.97;
  const size_t n = static_cast<size_t>((hi - lo) / step) + 1;
  std::vector<double> vals(n);
  parallel_for(n, [&](size_t i) { vals[i] = rate_at(lo + i * step); });
  size_t best = 0;
  for (size_t i = 1; i < n; ++i)
    if (vals[i] > vals[best]) best = i;
  double a = std::max(lo, lo + (best - 1.0) * step);
  double b = std::min(hi, lo + (best + 1.0) * step);
  TernaryPoint out;
  double refined = golden_max(rate_at, a, b, 40, &out.p);
  if (refined < vals[best]) {
    out.p = lo + best * step;
    out.rate = vals[best];
  } else {
    out.rate = refined;
  }
  return out;
}

std::vector<double> fig4_snr_grid() {
  std::vector<double> g;
  for (int i = 0; i < 40; ++i) g.push_back(-5.0 + 20.0 * i / 39.0);
  return g;
}

std::vector<double> fig5_snr_grid() {
  std::vector<double> g;
  for (int i = 0; i < 40; ++i) g.push_back(1.0 + 2.0 * i / 39.0);
  return g;
}

std::map<std::string, std::string> figure_fig4() {
  auto grid = fig4_snr_grid();
  struct Row {
    double upper, cor1, thm2, q2, q4, iid;
  };
  std::vector<Row> rows(grid.size());
  parallel_for(grid.size(), [&](size_t i) {
    double P = std::pow(10.0, grid[i] / 10.0);
    rows[i] = {series_upper(P),      series_cor1(P), series_thm2_pam4(P),
               series_thm1_bpsk(P), series_thm1_pam4(P), series_iid(P)};
  });
  std::ostringstream csv;
  csv << "snr_db,upper,cor1,thm2,thm1_q2,thm1_q4,iid\n";
  for (size_t i = 0; i < grid.size(); ++i) {
    csv << fmt_g12(grid[i]) << ',' << fmt_g12(rows[i].upper) << ','
        << fmt_g12(rows[i].cor1) << ',' << fmt_g12(rows[i].thm2) << ','
        << fmt_g12(rows[i].q2) << ',' << fmt_g12(rows[i].q4) << ','
        << fmt_g12(rows[i].iid) << '\n';
  }
  return {{"fig4.csv", csv.str()}};
}

std::map<std::string, std::string> figure_fig5() {
  auto grid = fig5_snr_grid();
  struct Row {
    double cor1, thm2, iid, p;
  };
  std::vector<Row> rows(grid.size());
  parallel_for(grid.size(), [&](size_t i) {
    double P = std::pow(10.0, grid[i] / 10.0);
    TernaryPoint t = series_thm2_ternary(P);
    rows[i] = {series_cor1(P), t.rate, series_iid(P), t.p};
  });
  std::ostringstream csv;
  csv << "snr_db,cor1,thm2,iid,ternary_p\n";
  for (size_t i = 0; i < grid.size(); ++i) {
    csv << fmt_g12(grid[i]) << ',' << fmt_g12(rows[i].cor1) << ','
        << fmt_g12(rows[i].thm2) << ',' << fmt_g12(rows[i].iid) << ','
        << fmt_g12(rows[i].p) << '\n';
  }
  return {{"fig5.csv", csv.str()}};
}

Fig7Regions fig7_regions(double p1, double p2, double h) {
  Example4 net = builtin_example4(p1, p2, h);
  Fig7Regions out;

  auto capacity = [](double x) { return 0.5 * std::log2(1.0 + x); };
  auto pentagon = [&](const GaussianMac& mac) {
    RateRegion r;
    r.dim = 2;
    Polytope p;
    p.halfspaces.push_back({{1, 0}, capacity(mac.h[0] * mac.h[0] * mac.power[0])});
    p.halfspaces.push_back({{0, 1}, capacity(mac.h[1] * mac.h[1] * mac.power[1])});
    p.halfspaces.push_back({{1, 1}, capacity(mac.h[0] * mac.h[0] * mac.power[0] +
                                             mac.h[1] * mac.h[1] * mac.power[1])});
    r.pieces.push_back(std::move(p));
    return r;
  };

  // Receiver 1 recovers both messages: R_LMAC of the corollary; receiver 2
  // recovers the sum: R_CF([1 1]) u R_LMAC.
  out.nested_rx1 = region_cor1_lmac(net.rx1.h, net.rx1.power, {1, 1});
  out.nested_rx2 = region_cor1(net.rx2.h, net.rx2.power, {1, 1}, {1, 1});
  out.nested_combined =
      convex_hull(region_intersect(out.nested_rx1, out.nested_rx2));

  out.iid_rx1 = pentagon(net.rx1);
  out.iid_rx2 = pentagon(net.rx2);
  out.iid_combined = convex_hull(region_intersect(out.iid_rx1, out.iid_rx2));
  return out;
}

namespace {
std::string vertices_csv(const RateRegion& r) {
  std::ostringstream csv;
  csv << "R1,R2\n";
  for (const auto& v : region_vertices(r))
    csv << fmt_g12(v[0]) << ',' << fmt_g12(v[1]) << '\n';
  return csv.str();
}
}  // namespace

std::map<std::string, std::string> figure_fig7() {
  Fig7Regions f = fig7_regions();
  return {{"fig7_nested_rx1.csv", vertices_csv(f.nested_rx1)},
          {"fig7_nested_rx2.csv", vertices_csv(f.nested_rx2)},
          {"fig7_nested_combined.csv", vertices_csv(f.nested_combined)},
          {"fig7_iid_rx1.csv", vertices_csv(f.iid_rx1)},
          {"fig7_iid_rx2.csv", vertices_csv(f.iid_rx2)},
          {"fig7_iid_combined.csv", vertices_csv(f.iid_combined)}};
}

}  // namespace cfkit
