#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "util.hpp"

namespace cfkit {

namespace {

Pmf family_pmf(PmfFamily family, int q, double p) {
  switch (family) {
    case PmfFamily::Bern:
      if (q != 2) throw std::invalid_argument("bern family needs q = 2");
      return Pmf::bernoulli(p);
    case PmfFamily::Ternary:
      return Pmf({(1 - p) / 2, p, (1 - p) / 2});
    case PmfFamily::Uniform:
      return Pmf::uniform(q);
  }
  throw std::invalid_argument("unknown family");
}

CfProblem problem_for(const DiscreteMac& channel, const SearchSpec& spec,
                      double p) {
  auto field = std::make_shared<const FiniteField>(spec.q);
  Pmf pmf = family_pmf(spec.family, spec.q, p);
  if (pmf.size() != channel.input_sizes()[0] ||
      pmf.size() != channel.input_sizes()[1])
    throw std::invalid_argument("family alphabet does not match the channel");
  std::vector<int64_t> labels(pmf.size());
  std::iota(labels.begin(), labels.end(), 0);
  return CfProblem::make(channel, {pmf, pmf}, {labels, labels}, field);
}

}  // namespace

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  int iters, double* arg_out) {
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  double arg = f1 > f2 ? x1 : x2;
  if (arg_out) *arg_out = arg;
  return std::max(f1, f2);
}

double evaluate_objective(const DiscreteMac& channel, const SearchSpec& spec,
                          double param) {
  CfProblem prob = problem_for(channel, spec, param);
  switch (spec.objective) {
    case Objective::CfSymmetric:
      return max_symmetric_rate(region_thm1(prob, spec.a));
    case Objective::CfSumRate:
      return max_sum_rate(region_thm1(prob, spec.a));
    case Objective::ClassicalMacSymmetric: {
      Thm1Quantities q = thm1_quantities(prob, spec.a);
      RateRegion r;
      r.dim = 2;
      Polytope pent;
      pent.halfspaces.push_back({{1, 0}, q.i1_given_2});
      pent.halfspaces.push_back({{0, 1}, q.i2_given_1});
      pent.halfspaces.push_back({{1, 1}, q.i12});
      if (q.i1_given_2 > 0 && q.i2_given_1 > 0 && q.i12 > 0)
        r.pieces.push_back(std::move(pent));
      return max_symmetric_rate(r);
    }
  }
  throw std::invalid_argument("unknown objective");
}

OptResult optimize_symmetric_rate(const DiscreteMac& channel,
                                  const SearchSpec& spec) {
  if (spec.family == PmfFamily::Uniform) {
    return {0.5, evaluate_objective(channel, spec, 0.5)};
  }
  const double step = spec.grid_step;
  const size_t n = static_cast<size_t>(std::floor(1.0 / step)) + 1;
  std::vector<double> values(n);
  parallel_for(n, [&](size_t i) {
    double p = std::min(1.0 - 1e-12, std::max(1e-12, i * step));
    values[i] = evaluate_objective(channel, spec, p);
  });
  size_t best = 0;
  for (size_t i = 1; i < n; ++i)
    if (values[i] > values[best]) best = i;

  double lo = std::max(1e-12, (best == 0 ? 0.0 : (best - 1) * step));
  double hi = std::min(1.0 - 1e-12, (best + 1) * step);
  double arg = best * step;
  double refined = golden_max(
      [&](double p) { return evaluate_objective(channel, spec, p); }, lo, hi,
      spec.refine_iters, &arg);
  if (refined < values[best]) return {std::min(1.0 - 1e-12, std::max(1e-12, best * step)), values[best]};
  return {arg, refined};
}

CoeffSearchResult best_coefficients(
    const std::function<IcfPair(const std::vector<int64_t>&)>& icf_of,
    std::vector<std::vector<int64_t>> candidates) {
  if (candidates.empty()) throw std::invalid_argument("empty candidate set");
  // canonicalize: gcd-reduce, first nonzero entry positive
  for (auto& a : candidates) {
    int64_t g = 0;
    for (int64_t c : a) g = std::gcd(g, std::llabs(c));
    if (g == 0) throw std::invalid_argument("zero candidate vector");
    for (auto& c : a) c /= g;
    for (int64_t c : a) {
      if (c == 0) continue;
      if (c < 0)
        for (auto& v : a) v = -v;
      break;
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  CoeffSearchResult best;
  best.objective = -kInfBits;
  for (const auto& a : candidates) {
    IcfPair p = icf_of(a);
    double score = std::min(p.icf1, p.icf2);
    // ties break toward the lexicographically largest canonical vector
    if (score > best.objective + 1e-12 ||
        (std::fabs(score - best.objective) <= 1e-12 && a > best.a)) {
      best.objective = score;
      best.a = a;
    }
  }
  return best;
}

}  // namespace cfkit
