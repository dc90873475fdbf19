#include "region.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "translate.hpp"

namespace cfkit {

namespace {

double xlog2x(double p) { return p > 0 ? p * std::log2(p) : 0.0; }

double entropy_span(const double* p, size_t n) {
  double h = 0;
  for (size_t i = 0; i < n; ++i) h -= xlog2x(p[i]);
  return h;
}

int64_t reduce_coeff(int64_t c, const FiniteField& f) {
  if (f.is_prime()) {
    int64_t r = c % f.order();
    if (r < 0) r += f.order();
    return r;
  }
  if (c < 0 || c >= f.order())
    throw std::invalid_argument(
        "coefficients over a prime-power field must be field labels");
  return c;
}

// Joint p(u_1, ..., u_K, y) flattened over input combos x output.
struct JointView {
  const CfProblem& prob;
  std::vector<double> joint;   // combos x ny
  std::vector<double> pu;      // combos
  std::vector<double> py;      // ny
  size_t ny;

  explicit JointView(const CfProblem& p)
      : prob(p), ny(p.mac.output_size()) {
    const size_t combos = p.mac.input_combos();
    joint.resize(combos * ny);
    pu.resize(combos);
    py.assign(ny, 0.0);
    for (size_t flat = 0; flat < combos; ++flat) {
      auto u = p.mac.unflatten(flat);
      double w = 1.0;
      for (size_t k = 0; k < u.size(); ++k) w *= p.pmfs[k][u[k]];
      pu[flat] = w;
      const double* row = p.mac.cond().data() + flat * ny;
      double* dst = joint.data() + flat * ny;
      for (size_t y = 0; y < ny; ++y) {
        dst[y] = w * row[y];
        py[y] += dst[y];
      }
    }
  }

  double h_y() const { return entropy_span(py.data(), ny); }

  double h_y_given_all() const {
    double h = 0;
    const size_t combos = pu.size();
    for (size_t flat = 0; flat < combos; ++flat) {
      if (pu[flat] == 0) continue;
      const double* row = prob.mac.cond().data() + flat * ny;
      h += pu[flat] * entropy_span(row, ny);
    }
    return h;
  }

  // H(Y | U_S) for a subset S of users.
  double h_y_given(const std::vector<size_t>& subset) const {
    std::map<std::vector<size_t>, std::vector<double>> rows;
    const size_t combos = pu.size();
    for (size_t flat = 0; flat < combos; ++flat) {
      auto u = prob.mac.unflatten(flat);
      std::vector<size_t> key;
      for (size_t k : subset) key.push_back(u[k]);
      auto& row = rows[key];
      if (row.empty()) row.assign(ny, 0.0);
      const double* src = joint.data() + flat * ny;
      for (size_t y = 0; y < ny; ++y) row[y] += src[y];
    }
    double h = 0;
    for (const auto& [key, row] : rows) h += entropy_span(row.data(), ny);
    double h_marg = 0;
    for (const auto& [key, row] : rows) {
      double mass = std::accumulate(row.begin(), row.end(), 0.0);
      h_marg -= xlog2x(mass);
    }
    return h - h_marg;
  }

  // H(W_b | Y) where W_b = sum_k b_k U_k under the problem algebra.
  double h_w_given_y(const std::vector<int64_t>& b) const {
    std::map<int64_t, std::vector<double>> rows;
    const size_t combos = pu.size();
    for (size_t flat = 0; flat < combos; ++flat) {
      if (pu[flat] == 0) continue;
      auto u = prob.mac.unflatten(flat);
      int64_t w = prob.combine(b, u);
      auto& row = rows[w];
      if (row.empty()) row.assign(ny, 0.0);
      const double* src = joint.data() + flat * ny;
      for (size_t y = 0; y < ny; ++y) row[y] += src[y];
    }
    double h_wy = 0;
    for (const auto& [w, row] : rows) h_wy += entropy_span(row.data(), ny);
    return h_wy - h_y();
  }

  // H(W_c | Y, W_b) via the (w_b, w_c, y) fold.
  double h_w_given_y_and(const std::vector<int64_t>& c,
                         const std::vector<int64_t>& b) const {
    std::map<std::pair<int64_t, int64_t>, std::vector<double>> rows;
    std::map<int64_t, std::vector<double>> rows_b;
    const size_t combos = pu.size();
    for (size_t flat = 0; flat < combos; ++flat) {
      if (pu[flat] == 0) continue;
      auto u = prob.mac.unflatten(flat);
      int64_t wb = prob.combine(b, u);
      int64_t wc = prob.combine(c, u);
      auto& row = rows[{wb, wc}];
      if (row.empty()) row.assign(ny, 0.0);
      auto& rowb = rows_b[wb];
      if (rowb.empty()) rowb.assign(ny, 0.0);
      const double* src = joint.data() + flat * ny;
      for (size_t y = 0; y < ny; ++y) {
        row[y] += src[y];
        rowb[y] += src[y];
      }
    }
    double h_bcy = 0, h_by = 0;
    for (const auto& [k, row] : rows) h_bcy += entropy_span(row.data(), ny);
    for (const auto& [k, row] : rows_b) h_by += entropy_span(row.data(), ny);
    return h_bcy - h_by;
  }
};

// Nonzero coefficient pairs up to scalar multiples; scalar multiples induce
// the same fold of (u_1, u_2), hence identical entropies.
std::vector<std::vector<int64_t>> b_candidates(const CfProblem& prob,
                                               int integer_range) {
  std::vector<std::vector<int64_t>> out;
  if (prob.field_mode()) {
    const int q = prob.field->order();
    out.push_back({0, 1});
    for (int x = 0; x < q; ++x) out.push_back({1, x});
  } else {
    for (int64_t b1 = 0; b1 <= integer_range; ++b1)
      for (int64_t b2 = -integer_range; b2 <= integer_range; ++b2) {
        if (b1 == 0 && b2 <= 0) continue;
        if (std::gcd(std::llabs(b1), std::llabs(b2)) != 1) continue;
        out.push_back({b1, b2});
      }
  }
  return out;
}

Polytope make_piece(const std::vector<std::pair<std::vector<double>, double>>& rows) {
  Polytope p;
  for (const auto& [coeffs, bound] : rows) p.halfspaces.push_back({coeffs, bound});
  return p;
}

bool piece_positive(const Polytope& p) {
  for (const auto& hs : p.halfspaces)
    if (!(hs.bound > 1e-12)) return false;
  return true;
}

void push_if_feasible(RateRegion& r, Polytope p) {
  if (piece_positive(p)) r.pieces.push_back(std::move(p));
}

}  // namespace

int64_t CfProblem::combine(const std::vector<int64_t>& coeffs,
                           const std::vector<size_t>& u) const {
  if (coeffs.size() != users()) throw std::invalid_argument("coefficient arity");
  if (field) {
    int acc = 0;
    for (size_t k = 0; k < coeffs.size(); ++k) {
      int c = static_cast<int>(reduce_coeff(coeffs[k], *field));
      acc = field->add(acc, field->mul(c, static_cast<int>(labels[k][u[k]])));
    }
    return acc;
  }
  int64_t acc = 0;
  for (size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * labels[k][u[k]];
  return acc;
}

CfProblem CfProblem::make(DiscreteMac mac, std::vector<Pmf> pmfs,
                          std::vector<std::vector<int64_t>> labels,
                          std::shared_ptr<const FiniteField> field) {
  if (pmfs.size() != mac.users() || labels.size() != mac.users())
    throw std::invalid_argument("per-user pmfs and labels required");
  for (size_t k = 0; k < pmfs.size(); ++k) {
    if (pmfs[k].size() != mac.input_sizes()[k] ||
        labels[k].size() != mac.input_sizes()[k])
      throw std::invalid_argument("alphabet size mismatch for user " +
                                  std::to_string(k + 1));
    if (field)
      for (int64_t lab : labels[k])
        if (lab < 0 || lab >= field->order())
          throw std::invalid_argument("label outside the field");
  }
  return CfProblem{std::move(mac), std::move(pmfs), std::move(labels),
                   std::move(field)};
}

LabeledPmf linear_comb_pmf(const std::vector<Pmf>& pmfs,
                           const std::vector<std::vector<int64_t>>& labels,
                           const std::vector<int64_t>& coeffs,
                           const FiniteField* field) {
  if (pmfs.empty() || pmfs.size() != labels.size() ||
      coeffs.size() != pmfs.size())
    throw std::invalid_argument("arity mismatch");
  bool all_zero = true;
  for (int64_t c : coeffs) all_zero = all_zero && c == 0;
  if (all_zero) throw std::invalid_argument("zero coefficient vector");

  std::map<int64_t, double> acc;
  std::vector<size_t> idx(pmfs.size(), 0);
  bool done = false;
  while (!done) {
    double w = 1.0;
    for (size_t k = 0; k < pmfs.size(); ++k) w *= pmfs[k][idx[k]];
    if (w > 0) {
      int64_t value = 0;
      if (field) {
        int a = 0;
        for (size_t k = 0; k < pmfs.size(); ++k) {
          int c = static_cast<int>(reduce_coeff(coeffs[k], *field));
          a = field->add(a, field->mul(c, static_cast<int>(labels[k][idx[k]])));
        }
        value = a;
      } else {
        for (size_t k = 0; k < pmfs.size(); ++k)
          value += coeffs[k] * labels[k][idx[k]];
      }
      acc[value] += w;
    }
    done = true;
    for (size_t a = pmfs.size(); a-- > 0;) {
      if (++idx[a] < pmfs[a].size()) {
        done = false;
        break;
      }
      idx[a] = 0;
    }
  }
  LabeledPmf out;
  for (const auto& [v, p] : acc) {
    out.values.push_back(v);
    out.probs.push_back(p);
  }
  return out;
}

IcfPair icf_finite(const CfProblem& prob, const std::vector<int64_t>& a) {
  if (prob.users() != 2) throw std::invalid_argument("icf_finite needs K = 2");
  JointView view(prob);
  double hw_y = view.h_w_given_y(a);
  return {entropy(prob.pmfs[0]) - hw_y, entropy(prob.pmfs[1]) - hw_y};
}

Thm1Quantities thm1_quantities(const CfProblem& prob,
                               const std::vector<int64_t>& a,
                               int integer_b_range) {
  if (prob.users() != 2) throw std::invalid_argument("theorem 1 needs K = 2");
  if (a.size() != 2) throw std::invalid_argument("coefficient arity");
  if (a[0] == 0 && a[1] == 0) throw std::invalid_argument("zero coefficient vector");

  JointView view(prob);
  Thm1Quantities out;
  const double h1 = entropy(prob.pmfs[0]);
  const double h2 = entropy(prob.pmfs[1]);
  const double hy = view.h_y();
  const double hy_all = view.h_y_given_all();
  out.i12 = hy - hy_all;
  out.i1_given_2 = view.h_y_given({1}) - hy_all;
  out.i2_given_1 = view.h_y_given({0}) - hy_all;

  double hw_y = view.h_w_given_y(a);
  out.icf = {h1 - hw_y, h2 - hw_y};

  out.maxmin1 = -kInfBits;
  out.maxmin2 = -kInfBits;
  for (const auto& b : b_candidates(prob, integer_b_range)) {
    double hb = view.h_w_given_y(b);
    double icf1 = h1 - hb, icf2 = h2 - hb;
    out.maxmin1 = std::max(out.maxmin1, std::min(icf1, out.i12 - icf2));
    out.maxmin2 = std::max(out.maxmin2, std::min(icf2, out.i12 - icf1));
  }
  return out;
}

RateRegion region_lmac(const CfProblem& prob, int integer_b_range) {
  // any nonzero a works: only LMAC quantities are used
  Thm1Quantities q = thm1_quantities(prob, {1, 0}, integer_b_range);
  RateRegion r;
  r.dim = 2;
  push_if_feasible(r, make_piece({{{1, 0}, q.maxmin1},
                                  {{0, 1}, q.i2_given_1},
                                  {{1, 1}, q.i12}}));
  push_if_feasible(r, make_piece({{{1, 0}, q.i1_given_2},
                                  {{0, 1}, q.maxmin2},
                                  {{1, 1}, q.i12}}));
  return r;
}

RateRegion region_thm1(const CfProblem& prob, const std::vector<int64_t>& a,
                       int integer_b_range) {
  Thm1Quantities q = thm1_quantities(prob, a, integer_b_range);
  RateRegion r;
  r.dim = 2;
  // R_CF(a): one box; a user with a zero coefficient never enters the
  // decoder's index space, so its rate is unconstrained here.
  {
    Polytope box;
    if (a[0] != 0) box.halfspaces.push_back({{1, 0}, q.icf.icf1});
    if (a[1] != 0) box.halfspaces.push_back({{0, 1}, q.icf.icf2});
    push_if_feasible(r, std::move(box));
  }
  RateRegion lm = region_lmac(prob, integer_b_range);
  r.pieces.insert(r.pieces.end(), lm.pieces.begin(), lm.pieces.end());
  return r;
}

RateRegion region_lmac_bc_form(const CfProblem& prob) {
  if (!prob.field_mode())
    throw std::invalid_argument("the explicit (b, c) form is a field construction");
  JointView view(prob);
  const double h1 = entropy(prob.pmfs[0]);
  const double h2 = entropy(prob.pmfs[1]);
  const double hy = view.h_y();
  const double hy_all = view.h_y_given_all();
  const double i12 = hy - hy_all;
  const double i1g2 = view.h_y_given({1}) - hy_all;
  const double i2g1 = view.h_y_given({0}) - hy_all;

  auto pairs = b_candidates(prob, 0);
  RateRegion r;
  r.dim = 2;
  for (size_t ib = 0; ib < pairs.size(); ++ib)
    for (size_t ic = 0; ic < pairs.size(); ++ic) {
      if (ib == ic) continue;  // projective representatives: distinct => independent
      const auto& b = pairs[ib];
      const auto& c = pairs[ic];
      double tb = -view.h_w_given_y(b);            // I(W_b;Y) - H(W_b)
      double tc = -view.h_w_given_y_and(c, b);     // I(W_c;Y,W_b) - H(W_c)
      // min(R1 - H1, R2 - H2) < t for both t's; expand the two mins
      const std::pair<std::vector<double>, double> base1{{1, 0}, i1g2};
      const std::pair<std::vector<double>, double> base2{{0, 1}, i2g1};
      const std::pair<std::vector<double>, double> base12{{1, 1}, i12};
      for (int branch_b = 0; branch_b < 2; ++branch_b)
        for (int branch_c = 0; branch_c < 2; ++branch_c) {
          std::vector<std::pair<std::vector<double>, double>> rows{base1, base2,
                                                                   base12};
          rows.push_back(branch_b == 0
                             ? std::pair<std::vector<double>, double>{{1, 0}, h1 + tb}
                             : std::pair<std::vector<double>, double>{{0, 1}, h2 + tb});
          rows.push_back(branch_c == 0
                             ? std::pair<std::vector<double>, double>{{1, 0}, h1 + tc}
                             : std::pair<std::vector<double>, double>{{0, 1}, h2 + tc});
          push_if_feasible(r, make_piece(rows));
        }
    }
  return r;
}

RateRegion region_thm2(const DiscreteMac& induced_mac,
                       const std::vector<Pmf>& pmfs,
                       const std::vector<std::vector<int64_t>>& int_labels,
                       const std::vector<int64_t>& a,
                       std::optional<int> prime_q) {
  TranslationPlan plan = min_prime_q({a}, int_labels);
  int q = prime_q.value_or(plan.q);
  if (q < plan.q)
    throw std::invalid_argument("prime " + std::to_string(q) +
                                " is below the Translation-Lemma minimum " +
                                std::to_string(plan.q));
  if (!is_prime(q)) throw std::invalid_argument("q must be prime");
  auto field = std::make_shared<const FiniteField>(q);
  std::vector<std::vector<int64_t>> field_labels(int_labels.size());
  for (size_t k = 0; k < int_labels.size(); ++k)
    for (int64_t v : int_labels[k])
      field_labels[k].push_back(field->from_signed(v));
  CfProblem prob =
      CfProblem::make(induced_mac, pmfs, std::move(field_labels), field);
  return region_thm1(prob, a);
}

RateRegion region_thm4(const CfProblem& prob, const std::vector<int64_t>& a1,
                       const std::vector<int64_t>& a2) {
  const size_t K = prob.users();
  if (K > 4) throw std::invalid_argument("theorem 4 supports K <= 4");
  if (a1.size() != K || a2.size() != K)
    throw std::invalid_argument("coefficient arity");

  // linear independence of the coefficient vectors
  if (prob.field_mode()) {
    const auto& f = *prob.field;
    Digits r1, r2;
    for (int64_t c : a1) r1.push_back(static_cast<int>(reduce_coeff(c, f)));
    for (int64_t c : a2) r2.push_back(static_cast<int>(reduce_coeff(c, f)));
    if (rank_over_field({r1, r2}, f) < 2)
      throw std::invalid_argument(
          "dependent coefficient vectors: use the single-combination region");
  } else {
    bool dep = true;
    for (size_t i = 0; i < K && dep; ++i)
      for (size_t j = 0; j < K && dep; ++j)
        if (a1[i] * a2[j] != a1[j] * a2[i]) dep = false;
    if (dep)
      throw std::invalid_argument(
          "dependent coefficient vectors: use the single-combination region");
  }

  JointView view(prob);
  const double hy = view.h_y();

  std::vector<double> hu(K);
  for (size_t k = 0; k < K; ++k) hu[k] = entropy(prob.pmfs[k]);

  // joint fold over (w1, w2, y)
  std::map<std::pair<int64_t, int64_t>, std::vector<double>> rows;
  const size_t combos = prob.mac.input_combos();
  const size_t ny = prob.mac.output_size();
  std::vector<double> pw1w2_mass;
  for (size_t flat = 0; flat < combos; ++flat) {
    auto u = prob.mac.unflatten(flat);
    int64_t w1 = prob.combine(a1, u);
    int64_t w2 = prob.combine(a2, u);
    auto& row = rows[{w1, w2}];
    if (row.empty()) row.assign(ny, 0.0);
    const double* src = view.joint.data() + flat * ny;
    for (size_t y = 0; y < ny; ++y) row[y] += src[y];
  }
  double h_w1w2_y = 0, h_w1w2 = 0;
  std::map<int64_t, std::vector<double>> rows_w1, rows_w2;
  std::map<int64_t, double> pw1, pw2;
  for (const auto& [wk, row] : rows) {
    h_w1w2_y += entropy_span(row.data(), ny);
    double mass = std::accumulate(row.begin(), row.end(), 0.0);
    h_w1w2 -= xlog2x(mass);
    auto& r1 = rows_w1[wk.first];
    if (r1.empty()) r1.assign(ny, 0.0);
    auto& r2 = rows_w2[wk.second];
    if (r2.empty()) r2.assign(ny, 0.0);
    for (size_t y = 0; y < ny; ++y) {
      r1[y] += row[y];
      r2[y] += row[y];
    }
    pw1[wk.first] += mass;
    pw2[wk.second] += mass;
  }
  h_w1w2_y -= hy;  // now H(W1, W2 | Y)
  double h_w1 = 0, h_w2 = 0, h_w1_y = 0, h_w2_y = 0;
  for (const auto& [w, p] : pw1) h_w1 -= xlog2x(p);
  for (const auto& [w, p] : pw2) h_w2 -= xlog2x(p);
  for (const auto& [w, row] : rows_w1) h_w1_y += entropy_span(row.data(), ny);
  for (const auto& [w, row] : rows_w2) h_w2_y += entropy_span(row.data(), ny);
  h_w1_y -= hy;
  h_w2_y -= hy;

  // I(W_a2; Y, W_a1) - H(W_a2) = -H(W_a2 | Y, W_a1)
  double h_w2_given_yw1 = h_w1w2_y - h_w1_y;
  double h_w1_given_yw2 = h_w1w2_y - h_w2_y;
  double i_w1w2_y = h_w1w2 - h_w1w2_y;  // I(W1, W2; Y)

  // max over b of min{ -H(V_b|Y), -H(W1, W2 | Y, V_b) } (plus H(U) offsets):
  // V_b = b1 W1 + b2 W2 folded from the (w1, w2, y) rows.
  auto fold_vb = [&](const std::vector<int64_t>& b) {
    std::map<int64_t, std::vector<double>> vb_rows;
    for (const auto& [wk, row] : rows) {
      int64_t v;
      if (prob.field_mode()) {
        const auto& f = *prob.field;
        int c1 = static_cast<int>(reduce_coeff(b[0], f));
        int c2 = static_cast<int>(reduce_coeff(b[1], f));
        v = f.add(f.mul(c1, static_cast<int>(wk.first)),
                  f.mul(c2, static_cast<int>(wk.second)));
      } else {
        v = b[0] * wk.first + b[1] * wk.second;
      }
      auto& r = vb_rows[v];
      if (r.empty()) r.assign(ny, 0.0);
      for (size_t y = 0; y < ny; ++y) r[y] += row[y];
    }
    double h_vb_y = 0;
    for (const auto& [v, row] : vb_rows) h_vb_y += entropy_span(row.data(), ny);
    h_vb_y -= hy;
    return h_vb_y;  // H(V_b | Y)
  };

  std::vector<std::vector<int64_t>> bs;
  if (prob.field_mode()) {
    const int q = prob.field->order();
    bs.push_back({0, 1});
    for (int x = 0; x < q; ++x) bs.push_back({1, x});
  } else {
    for (int64_t b1 = 0; b1 <= 4; ++b1)
      for (int64_t b2 = -4; b2 <= 4; ++b2) {
        if (b1 == 0 && b2 <= 0) continue;
        if (std::gcd(std::llabs(b1), std::llabs(b2)) != 1) continue;
        bs.push_back({b1, b2});
      }
  }
  double best_gap = -kInfBits;  // max_b min(-H(V_b|Y), -H(W1,W2|Y,V_b))
  for (const auto& b : bs) {
    double h_vb_y = fold_vb(b);
    double h_w_pair_given_vb = h_w1w2_y - h_vb_y;  // V_b determined by (W1,W2)
    best_gap = std::max(best_gap, std::min(-h_vb_y, -h_w_pair_given_vb));
  }

  std::vector<size_t> k1, k2;
  for (size_t k = 0; k < K; ++k) {
    if (a1[k] != 0) k1.push_back(k);
    if (a2[k] != 0) k2.push_back(k);
  }

  auto build = [&](bool first_system) {
    Polytope p;
    const auto& direct = first_system ? k1 : k2;
    const auto& indirect = first_system ? k2 : k1;
    double h_other_given = first_system ? h_w2_given_yw1 : h_w1_given_yw2;
    for (size_t k : direct) {
      std::vector<double> row(K, 0.0);
      row[k] = 1.0;
      p.halfspaces.push_back({row, hu[k] + best_gap});
    }
    for (size_t j : indirect) {
      std::vector<double> row(K, 0.0);
      row[j] = 1.0;
      p.halfspaces.push_back({row, hu[j] - h_other_given});
    }
    for (size_t k : k1)
      for (size_t j : k2) {
        if (k == j) continue;
        std::vector<double> row(K, 0.0);
        row[k] = 1.0;
        row[j] = 1.0;
        p.halfspaces.push_back(
            {row, i_w1w2_y - h_w1w2 + hu[k] + hu[j]});
      }
    return p;
  };

  RateRegion r;
  r.dim = K;
  push_if_feasible(r, build(true));
  push_if_feasible(r, build(false));
  return r;
}

IcfPair gaussian_icf(const std::vector<double>& h, const std::vector<double>& power,
                     const std::vector<double>& beta,
                     const std::vector<int64_t>& a) {
  if (h.size() != 2 || power.size() != 2 || beta.size() != 2 || a.size() != 2)
    throw std::invalid_argument("two-user Gaussian form");
  if (a[0] == 0 && a[1] == 0) throw std::invalid_argument("zero coefficient vector");
  if (beta[0] == 0 || beta[1] == 0) throw std::invalid_argument("beta must be nonzero");
  double s1 = power[0] / (beta[0] * beta[0]);  // Var(U_1)
  double s2 = power[1] / (beta[1] * beta[1]);
  double var_y = 1.0 + h[0] * h[0] * power[0] + h[1] * h[1] * power[1];
  double var_w = a[0] * a[0] * s1 + a[1] * a[1] * s2;
  double cov_wy = a[0] * h[0] * beta[0] * s1 + a[1] * h[1] * beta[1] * s2;
  double var_w_given_y = var_w - cov_wy * cov_wy / var_y;
  double lg = std::log2(static_cast<double>(
      std::gcd(std::llabs(a[0]), std::llabs(a[1]))));
  return {0.5 * std::log2(s1 / var_w_given_y) + lg,
          0.5 * std::log2(s2 / var_w_given_y) + lg};
}

RateRegion region_cor1_lmac(const std::vector<double>& h,
                            const std::vector<double>& power,
                            const std::vector<double>& beta, int b_range) {
  auto capacity = [](double x) { return 0.5 * std::log2(1.0 + x); };
  double i12 = capacity(h[0] * h[0] * power[0] + h[1] * h[1] * power[1]);
  double i1g2 = capacity(h[0] * h[0] * power[0]);
  double i2g1 = capacity(h[1] * h[1] * power[1]);

  double maxmin1 = -kInfBits, maxmin2 = -kInfBits;
  for (int64_t b1 = 0; b1 <= b_range; ++b1)
    for (int64_t b2 = -b_range; b2 <= b_range; ++b2) {
      if (b1 == 0 && b2 <= 0) continue;
      if (std::gcd(std::llabs(b1), std::llabs(b2)) != 1) continue;
      IcfPair p = gaussian_icf(h, power, beta, {b1, b2});
      maxmin1 = std::max(maxmin1, std::min(p.icf1, i12 - p.icf2));
      maxmin2 = std::max(maxmin2, std::min(p.icf2, i12 - p.icf1));
    }

  RateRegion r;
  r.dim = 2;
  push_if_feasible(r, make_piece({{{1, 0}, maxmin1},
                                  {{0, 1}, i2g1},
                                  {{1, 1}, i12}}));
  push_if_feasible(r, make_piece({{{1, 0}, i1g2},
                                  {{0, 1}, maxmin2},
                                  {{1, 1}, i12}}));
  return r;
}

RateRegion region_cor1(const std::vector<double>& h, const std::vector<double>& power,
                       const std::vector<double>& beta, const std::vector<int64_t>& a,
                       int b_range) {
  IcfPair icf = gaussian_icf(h, power, beta, a);
  RateRegion r;
  r.dim = 2;
  {
    Polytope box;
    if (a[0] != 0) box.halfspaces.push_back({{1, 0}, icf.icf1});
    if (a[1] != 0) box.halfspaces.push_back({{0, 1}, icf.icf2});
    push_if_feasible(r, std::move(box));
  }
  RateRegion lmac = region_cor1_lmac(h, power, beta, b_range);
  r.pieces.insert(r.pieces.end(), lmac.pieces.begin(), lmac.pieces.end());
  return r;
}

}  // namespace cfkit
