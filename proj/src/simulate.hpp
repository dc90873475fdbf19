#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "channel.hpp"
#include "gf.hpp"
#include "prob.hpp"
#include "util.hpp"

namespace cfkit {

// Shared-generator nested linear code: u_k^n(m, l) = eta(m, l) G (+) d_k^n.
// G and the dithers are drawn uniformly from the master seed; codewords are
// produced on demand.
class NestedLinearCode {
 public:
  NestedLinearCode(std::shared_ptr<const FiniteField> field, int n,
                   IndexLayout layout, uint64_t seed);

  const FiniteField& field() const { return *field_; }
  int blocklength() const { return n_; }
  const IndexLayout& layout() const { return layout_; }
  uint64_t seed() const { return seed_; }
  uint64_t messages(int user) const;
  uint64_t aux_indices(int user) const;
  double rate(int user) const;      // bits per symbol
  double aux_rate(int user) const;

  Digits codeword(int user, uint64_t m, uint64_t l) const;
  const std::vector<Digits>& generator() const { return g_; }
  const Digits& dither(int user) const { return dither_[user]; }

  // eta(m, l) combined under coefficients a across users: the index vector of
  // the linear combination.
  Digits combination_index(const std::vector<int64_t>& a,
                           const std::vector<uint64_t>& m,
                           const std::vector<uint64_t>& l) const;

 private:
  std::shared_ptr<const FiniteField> field_;
  int n_;
  IndexLayout layout_;
  uint64_t seed_;
  std::vector<Digits> g_;       // kappa rows of length n
  std::vector<Digits> dither_;  // per user
};

// Multicoding encoder: scan auxiliary indices, pick uniformly among the
// eps'-typical candidates, fall back to a uniformly random index.
struct EncodeResult {
  uint64_t l = 0;
  Digits codeword;
  bool fallback = false;  // no typical candidate existed
};
EncodeResult encode_user(const NestedLinearCode& code, int user, uint64_t m,
                         const Pmf& target, double eps_prime, RngStream& rng);

struct DecodeOutcome {
  enum class Kind { Decoded, NoCandidate, Ambiguous } kind = Kind::NoCandidate;
  Digits s;  // combination index digits when decoded
};

// Exhaustive single-combination decoder: unique index s_a whose q-ary
// expansion matches a typical codeword tuple.
DecodeOutcome decode_single(const NestedLinearCode& code,
                            const std::vector<Pmf>& pmfs,
                            const DiscreteMac& induced,
                            const std::vector<int>& y,
                            const std::vector<int64_t>& a, double eps,
                            uint64_t budget);

// Simultaneous two-combination decoder (Theorem-4 rule).
struct PairOutcome {
  DecodeOutcome::Kind kind = DecodeOutcome::Kind::NoCandidate;
  Digits s1, s2;
};
PairOutcome decode_pair(const NestedLinearCode& code,
                        const std::vector<Pmf>& pmfs,
                        const DiscreteMac& induced, const std::vector<int>& y,
                        const std::vector<int64_t>& a1,
                        const std::vector<int64_t>& a2, double eps,
                        uint64_t budget);

// Monte-Carlo campaign over fresh codebooks.
struct SimConfig {
  DiscreteMac channel;             // over U alphabets (already induced)
  std::vector<Pmf> pmfs;
  int q = 2;
  int n = 12;
  std::vector<double> rates;       // requested bits; snapped to digit grid
  std::vector<double> aux_rates;   // empty => D(p||unif) + 0.1
  std::vector<int64_t> a{1, 1};
  std::optional<std::vector<int64_t>> a2;  // enables the pair decoder
  double eps = 0.2, eps_prime = 0.1;
  size_t trials = 1000;
  uint64_t seed = 1;
  double budget_log2 = 22.0;
};

struct SimReport {
  size_t trials = 0, errors = 0;
  size_t encode_fallbacks = 0;
  size_t none = 0, ambiguous = 0;
  double error_rate = 0, wilson_lo = 0, wilson_hi = 0;
  std::vector<double> snapped_rates, snapped_aux_rates;
};
SimReport simulate_point(const SimConfig& cfg);

// Wilson 95% score interval.
void wilson_interval(size_t errors, size_t trials, double* lo, double* hi);

// Chi-square survival p-value with k degrees of freedom.
double chi_square_pvalue(double statistic, double dof);

// Ensemble statistics (Appendix-style checks). Each returns a small report.
struct ChiSquareReport {
  std::string name;
  double statistic = 0, dof = 0, p_value = 0;
  bool pass = false;
};
ChiSquareReport check_uniformity(int q, int n, int digits, size_t samples,
                                 uint64_t seed);
ChiSquareReport check_pairwise_independence(int q, int n, int digits,
                                            size_t samples, uint64_t seed);
ChiSquareReport check_fullrank_independence(int q, int n, int digits,
                                            size_t samples, uint64_t seed);
ChiSquareReport check_index_uniformity(int q, int n, int msg_digits,
                                       int aux_digits, const Pmf& target,
                                       double eps_prime, size_t samples,
                                       uint64_t seed);

struct IndexSetReport {
  std::vector<uint64_t> counts;       // |I_r| for r = K..2K
  std::vector<uint64_t> bounds;       // formula / upper bounds
  bool pass = false;
};
IndexSetReport check_index_set_counts(int q, int digits1, int digits2);

struct ExponentReport {
  double target = 0;     // I(X;Y) + D(p_X || uniform)
  double empirical = 0;  // -log2(hit rate) / n
  size_t hits = 0, samples = 0;
  bool pass = false;     // |empirical - target| <= tol
};
ExponentReport check_mismatched_exponent(double px1, double flip, double eps,
                                         int n, size_t samples, double tol,
                                         uint64_t seed);

}  // namespace cfkit
