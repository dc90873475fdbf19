#include "prob.hpp"

#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace cfkit {

namespace {
double xlog2x(double p) { return p > 0 ? p * std::log2(p) : 0.0; }
}  // namespace

Pmf::Pmf(std::vector<double> probs) : p_(std::move(probs)) {
  if (p_.empty()) throw std::invalid_argument("empty pmf");
  double total = 0;
  for (double v : p_) {
    if (!(v >= 0)) throw std::invalid_argument("pmf entries must be >= 0");
    total += v;
  }
  if (std::fabs(total - 1.0) > kPmfTolerance)
    throw std::invalid_argument("pmf mass " + std::to_string(total) +
                                " differs from 1 beyond tolerance");
}

Pmf Pmf::uniform(size_t n) {
  return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::bernoulli(double p1) {
  if (p1 < 0 || p1 > 1) throw std::invalid_argument("bernoulli parameter");
  return Pmf({1.0 - p1, p1});
}

Pmf Pmf::point_mass(size_t n, size_t at) {
  std::vector<double> v(n, 0.0);
  v.at(at) = 1.0;
  return Pmf(std::move(v));
}

JointPmf::JointPmf(std::vector<size_t> shape, std::vector<double> probs)
    : shape_(std::move(shape)), p_(std::move(probs)) {
  size_t n = 1;
  for (size_t s : shape_) n *= s;
  if (shape_.empty() || n != p_.size())
    throw std::invalid_argument("joint pmf shape mismatch");
  double total = 0;
  for (double v : p_) {
    if (!(v >= 0)) throw std::invalid_argument("joint pmf entries must be >= 0");
    total += v;
  }
  if (std::fabs(total - 1.0) > kPmfTolerance)
    throw std::invalid_argument("joint pmf mass differs from 1");
}

size_t JointPmf::offset(const std::vector<size_t>& idx) const {
  if (idx.size() != shape_.size()) throw std::invalid_argument("index arity");
  size_t off = 0;
  for (size_t a = 0; a < shape_.size(); ++a) {
    if (idx[a] >= shape_[a]) throw std::out_of_range("joint pmf index");
    off = off * shape_[a] + idx[a];
  }
  return off;
}

JointPmf JointPmf::marginal(const std::vector<size_t>& keep) const {
  for (size_t a : keep)
    if (a >= shape_.size()) throw std::invalid_argument("marginal axis out of range");
  std::vector<size_t> out_shape;
  for (size_t a : keep) out_shape.push_back(shape_[a]);
  size_t out_n = 1;
  for (size_t s : out_shape) out_n *= s;
  std::vector<double> out(out_n, 0.0);

  std::vector<size_t> idx(shape_.size(), 0);
  for (size_t flat = 0; flat < p_.size(); ++flat) {
    size_t off = 0;
    for (size_t a : keep) off = off * shape_[a] + idx[a];
    out[off] += p_[flat];
    for (size_t a = shape_.size(); a-- > 0;) {
      if (++idx[a] < shape_[a]) break;
      idx[a] = 0;
    }
  }
  return JointPmf(out_shape, std::move(out));
}

Pmf JointPmf::marginal_pmf(size_t axis) const {
  return Pmf(marginal({axis}).probs());
}

JointPmf JointPmf::product(const std::vector<Pmf>& pmfs) {
  if (pmfs.empty()) throw std::invalid_argument("empty product");
  std::vector<size_t> shape;
  for (const auto& p : pmfs) shape.push_back(p.size());
  size_t n = 1;
  for (size_t s : shape) n *= s;
  std::vector<double> out(n, 1.0);
  std::vector<size_t> idx(shape.size(), 0);
  for (size_t flat = 0; flat < n; ++flat) {
    double v = 1.0;
    for (size_t a = 0; a < shape.size(); ++a) v *= pmfs[a][idx[a]];
    out[flat] = v;
    for (size_t a = shape.size(); a-- > 0;) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
  return JointPmf(shape, std::move(out));
}

TypicalityParams::TypicalityParams(double e, double ep) : eps(e), eps_prime(ep) {
  if (!(0 < ep && ep < e && e < 1))
    throw std::invalid_argument("typicality needs 0 < eps' < eps < 1");
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0;
  for (double v : p) h -= xlog2x(v);
  return h;
}

double entropy(const Pmf& p) { return entropy_bits(p.probs()); }
double entropy(const JointPmf& j) { return entropy_bits(j.probs()); }

double kl_divergence(const Pmf& p, const Pmf& r) {
  if (p.size() != r.size()) throw std::invalid_argument("kl alphabet mismatch");
  double d = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (r[i] == 0) return kInfBits;
    d += p[i] * std::log2(p[i] / r[i]);
  }
  return d;
}

double conditional_entropy(const JointPmf& j, const std::vector<size_t>& target,
                           const std::vector<size_t>& given) {
  for (size_t a : target)
    for (size_t b : given)
      if (a == b) throw std::invalid_argument("target and given axes overlap");
  std::vector<size_t> both = target;
  both.insert(both.end(), given.begin(), given.end());
  double h_both = entropy(j.marginal(both));
  double h_given = given.empty() ? 0.0 : entropy(j.marginal(given));
  return h_both - h_given;
}

double mutual_information(const JointPmf& j, const std::vector<size_t>& a,
                          const std::vector<size_t>& b) {
  return conditional_entropy(j, a, {}) - conditional_entropy(j, a, b);
}

bool is_typical(const std::vector<int>& seq, const Pmf& p, double eps) {
  std::vector<size_t> counts(p.size(), 0);
  for (int s : seq) {
    if (s < 0 || static_cast<size_t>(s) >= p.size())
      throw std::invalid_argument("symbol outside alphabet");
    ++counts[s];
  }
  const double n = static_cast<double>(seq.size());
  for (size_t x = 0; x < p.size(); ++x) {
    double pi = counts[x] / n;
    if (std::fabs(pi - p[x]) > eps * p[x]) return false;
  }
  return true;
}

Pmf empirical_type(const std::vector<int>& seq, size_t alphabet) {
  std::vector<double> counts(alphabet, 0.0);
  for (int s : seq) counts.at(s) += 1.0;
  for (double& c : counts) c /= static_cast<double>(seq.size());
  return Pmf(std::move(counts));
}

double mismatched_exponent(const JointPmf& xy, const Pmf& tilde_x) {
  if (xy.axes() != 2) throw std::invalid_argument("expected a joint over (X, Y)");
  double i = mutual_information(xy, {0}, {1});
  double d = kl_divergence(xy.marginal_pmf(0), tilde_x);
  return i + d;
}

double covering_threshold(const JointPmf& x_xhat, const Pmf& tilde_xhat) {
  if (x_xhat.axes() != 2) throw std::invalid_argument("expected a joint over (X, Xhat)");
  double i = mutual_information(x_xhat, {0}, {1});
  double d = kl_divergence(x_xhat.marginal_pmf(1), tilde_xhat);
  return i + d;
}

double packing_threshold(const JointPmf& xy, const Pmf& tilde_x) {
  return mismatched_exponent(xy, tilde_x);
}

}  // namespace cfkit
