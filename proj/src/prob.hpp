#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace cfkit {

inline constexpr double kPmfTolerance = 1e-12;
inline constexpr double kInfBits = std::numeric_limits<double>::infinity();

// Probability mass over a finite alphabet 0..size-1. Construction validates
// nonnegativity and total mass within 1e-12; renormalization is refused so
// construction bugs surface immediately.
class Pmf {
 public:
  explicit Pmf(std::vector<double> probs);

  size_t size() const { return p_.size(); }
  double operator[](size_t i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

  static Pmf uniform(size_t n);
  static Pmf bernoulli(double p1);  // alphabet {0,1}, P(1) = p1
  static Pmf point_mass(size_t n, size_t at);

 private:
  std::vector<double> p_;
};

// Dense joint pmf over a product of finite alphabets, row-major.
class JointPmf {
 public:
  JointPmf(std::vector<size_t> shape, std::vector<double> probs);

  const std::vector<size_t>& shape() const { return shape_; }
  size_t axes() const { return shape_.size(); }
  const std::vector<double>& probs() const { return p_; }
  double at(const std::vector<size_t>& idx) const { return p_[offset(idx)]; }

  // Marginal over the listed axes (kept in the given order).
  JointPmf marginal(const std::vector<size_t>& keep_axes) const;
  Pmf marginal_pmf(size_t axis) const;

  // Product joint of independent single-axis pmfs.
  static JointPmf product(const std::vector<Pmf>& pmfs);

  size_t offset(const std::vector<size_t>& idx) const;

 private:
  std::vector<size_t> shape_;
  std::vector<double> p_;
};

struct TypicalityParams {
  double eps = 0.2;
  double eps_prime = 0.1;
  TypicalityParams() = default;
  TypicalityParams(double e, double ep);
};

// Information measures; everything is in bits.
double entropy_bits(const std::vector<double>& p);
double entropy(const Pmf& p);
double entropy(const JointPmf& j);
// D(p || r); returns +inf when supp(p) escapes supp(r).
double kl_divergence(const Pmf& p, const Pmf& r);
// H(targets | given) for disjoint axis sets of j.
double conditional_entropy(const JointPmf& j, const std::vector<size_t>& target,
                           const std::vector<size_t>& given);
// I(axesA ; axesB)
double mutual_information(const JointPmf& j, const std::vector<size_t>& a,
                          const std::vector<size_t>& b);

// Robust typicality: |pi(x|seq) - p(x)| <= eps * p(x) for every symbol.
bool is_typical(const std::vector<int>& seq, const Pmf& p, double eps);
Pmf empirical_type(const std::vector<int>& seq, size_t alphabet);

// Appendix-A exponent I(X;Y) + D(p_X || tilde_p) for a joint over (X, Y),
// X on axis 0. delta(eps) is never folded in.
double mismatched_exponent(const JointPmf& xy, const Pmf& tilde_x);

// Covering / packing thresholds share the same I + D value; the direction
// that suffices differs (covering: rate strictly above, packing: strictly
// below), so the value is labeled at the call site.
double covering_threshold(const JointPmf& x_xhat, const Pmf& tilde_xhat);
double packing_threshold(const JointPmf& xy, const Pmf& tilde_x);

}  // namespace cfkit
