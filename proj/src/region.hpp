#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "channel.hpp"
#include "gf.hpp"
#include "prob.hpp"

namespace cfkit {

// ---------------------------------------------------------------------------
// Rate-region geometry
// ---------------------------------------------------------------------------

// coeffs . R < bound (strict); R_k >= 0 is implicit in every polytope.
struct HalfSpace {
  std::vector<double> coeffs;
  double bound = 0;
};

struct Polytope {
  std::vector<HalfSpace> halfspaces;
};

// Union of convex pieces in R^dim.
struct RateRegion {
  size_t dim = 0;
  std::vector<Polytope> pieces;

  bool empty() const { return pieces.empty(); }
};

// Membership with the closed eps-shrunk convention (margin 1e-9).
bool region_contains(const RateRegion& r, const std::vector<double>& point,
                     double margin = 1e-9);

// Vertices of the union (each piece's basic feasible points, deduped).
// Supported for dim <= 3 plus dim == 4 (used for sum-rate only).
std::vector<std::vector<double>> region_vertices(const RateRegion& r);

double max_sum_rate(const RateRegion& r);
// sup { t : (t, ..., t) in r }, clipped at 0.
double max_symmetric_rate(const RateRegion& r);

RateRegion region_union(const RateRegion& a, const RateRegion& b);
RateRegion region_intersect(const RateRegion& a, const RateRegion& b);
// Time-sharing closure: convex hull of the union's vertex set (dim <= 3).
RateRegion convex_hull(const RateRegion& r);

// sup { R2 : (r1, R2) in r }, -inf when r1 is infeasible (dim == 2).
double sup_r2_at(const RateRegion& r, double r1);
// Point-set equality for 2-D regions via sup-curve comparison at all
// breakpoints; tol is an absolute coordinate tolerance.
bool region_equal_2d(const RateRegion& a, const RateRegion& b, double tol);
bool region_subset_2d(const RateRegion& a, const RateRegion& b, double tol);

std::string region_to_json(const RateRegion& r);
RateRegion region_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// Compute-forward problems over an induced discrete MAC
// ---------------------------------------------------------------------------

// Label algebra for linear combinations of the users' auxiliary symbols.
// Field mode combines labels with F_q arithmetic (integer coefficients are
// reduced mod q for prime fields); integer mode combines labels over Z.
struct CfProblem {
  DiscreteMac mac;                            // over U alphabets
  std::vector<Pmf> pmfs;                      // independent p(U_k)
  std::vector<std::vector<int64_t>> labels;   // per-user algebraic labels
  std::shared_ptr<const FiniteField> field;   // null => integer algebra

  size_t users() const { return pmfs.size(); }
  bool field_mode() const { return field != nullptr; }
  int64_t combine(const std::vector<int64_t>& coeffs,
                  const std::vector<size_t>& u) const;
  static CfProblem make(DiscreteMac mac, std::vector<Pmf> pmfs,
                        std::vector<std::vector<int64_t>> labels,
                        std::shared_ptr<const FiniteField> field);
};

// Exact pmf of sum_k a_k U_k under the problem's algebra.
struct LabeledPmf {
  std::vector<int64_t> values;
  std::vector<double> probs;
};
LabeledPmf linear_comb_pmf(const std::vector<Pmf>& pmfs,
                           const std::vector<std::vector<int64_t>>& labels,
                           const std::vector<int64_t>& coeffs,
                           const FiniteField* field);

// Theorem-1 rate quantities for K = 2.
struct IcfPair {
  double icf1 = 0;
  double icf2 = 0;
};
IcfPair icf_finite(const CfProblem& prob, const std::vector<int64_t>& a);

struct Thm1Quantities {
  IcfPair icf;          // for the requested a
  double i12 = 0;       // I(U1,U2;Y)
  double i1_given_2 = 0;
  double i2_given_1 = 0;
  double maxmin1 = 0;   // max_b min(icf1(b), i12 - icf2(b))
  double maxmin2 = 0;
};
Thm1Quantities thm1_quantities(const CfProblem& prob,
                               const std::vector<int64_t>& a,
                               int integer_b_range = 4);

RateRegion region_thm1(const CfProblem& prob, const std::vector<int64_t>& a,
                       int integer_b_range = 4);
// The R_LMAC part alone (both messages via the shared linear codebook).
RateRegion region_lmac(const CfProblem& prob, int integer_b_range = 4);
// Explicit (b, c) form of the multiple-access region; equals region_lmac.
RateRegion region_lmac_bc_form(const CfProblem& prob);

// Theorem 2: integer combination of bounded-integer inputs, computed over the
// Translation-Lemma prime field. prime_q overrides the minimal choice.
RateRegion region_thm2(const DiscreteMac& induced_mac,
                       const std::vector<Pmf>& pmfs,
                       const std::vector<std::vector<int64_t>>& int_labels,
                       const std::vector<int64_t>& a,
                       std::optional<int> prime_q = std::nullopt);

// Theorem 4: two linear combinations over a K-user MAC (K <= 4).
RateRegion region_thm4(const CfProblem& prob, const std::vector<int64_t>& a1,
                       const std::vector<int64_t>& a2);

// ---------------------------------------------------------------------------
// Gaussian closed forms
// ---------------------------------------------------------------------------

// I_CF for the two-user Gaussian MAC with U_k ~ N(0, P_k / beta_k^2) and
// x_k = beta_k u_k; reduces to the symmetric-power Corollary form when
// P_1 = P_2. Values include the log2 gcd(a) term.
IcfPair gaussian_icf(const std::vector<double>& h, const std::vector<double>& power,
                     const std::vector<double>& beta, const std::vector<int64_t>& a);
RateRegion region_cor1(const std::vector<double>& h, const std::vector<double>& power,
                       const std::vector<double>& beta, const std::vector<int64_t>& a,
                       int b_range = 4);
// The Gaussian R_LMAC alone (receiver recovering both messages).
RateRegion region_cor1_lmac(const std::vector<double>& h,
                            const std::vector<double>& power,
                            const std::vector<double>& beta, int b_range = 4);

// ---------------------------------------------------------------------------
// Continuous inputs via the quantization limit
// ---------------------------------------------------------------------------

struct PdfSpec {
  enum class Kind { Gaussian, Uniform, TruncGaussian } kind = Kind::Gaussian;
  double variance = 1.0;  // Gaussian / TruncGaussian
  double lo = -1.0, hi = 1.0;  // Uniform support
  double tau = 8.0;            // TruncGaussian truncation

  static PdfSpec gaussian(double var);
  static PdfSpec uniform(double lo, double hi);
  static PdfSpec trunc_gaussian(double var, double tau);
};

struct QuantLimitStep {
  double delta = 0;
  double h_u1 = 0, h_u2 = 0;  // H([U_k]_delta) + log2(delta)
  double icf1 = 0, icf2 = 0;  // H([U_k]) - H(W_delta | Y_delta)
};
struct QuantLimitReport {
  std::vector<QuantLimitStep> steps;
  double icf1 = 0, icf2 = 0;  // Richardson-extrapolated
  bool converged = true;      // diagnostic only
};

// Y = [U1] + [U2] + Z over a unit-variance Gaussian channel; W = a1 U1 + a2 U2
// with integer a. The log2 gcd(a) compensation emerges from the lattice
// computation itself.
QuantLimitReport region_thm3_limit(const PdfSpec& u1, const PdfSpec& u2,
                                   const std::vector<int64_t>& a,
                                   const std::vector<double>& deltas = {});

// H([U]_delta) for a pdf spec (building block, exposed for tests).
double quantized_entropy(const PdfSpec& u, double delta);

}  // namespace cfkit
