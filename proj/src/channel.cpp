#include "channel.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace cfkit {

namespace {
double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
}  // namespace

DiscreteMac::DiscreteMac(std::vector<size_t> input_sizes, size_t output_size,
                         std::vector<double> cond)
    : inputs_(std::move(input_sizes)), ny_(output_size), cond_(std::move(cond)) {
  if (inputs_.empty() || ny_ == 0)
    throw std::invalid_argument("channel needs inputs and an output alphabet");
  combos_ = 1;
  for (size_t s : inputs_) {
    if (s == 0) throw std::invalid_argument("empty input alphabet");
    combos_ *= s;
  }
  if (cond_.size() != combos_ * ny_)
    throw std::invalid_argument("conditional tensor size mismatch");
  for (size_t c = 0; c < combos_; ++c) {
    double total = 0;
    for (size_t y = 0; y < ny_; ++y) {
      double v = cond_[c * ny_ + y];
      if (!(v >= 0)) throw std::invalid_argument("negative conditional probability");
      total += v;
    }
    if (std::fabs(total - 1.0) > kPmfTolerance)
      throw std::invalid_argument("conditional slice does not sum to 1");
  }
}

size_t DiscreteMac::flatten(const std::vector<size_t>& x) const {
  if (x.size() != inputs_.size()) throw std::invalid_argument("input arity");
  size_t flat = 0;
  for (size_t k = 0; k < inputs_.size(); ++k) {
    if (x[k] >= inputs_[k]) throw std::out_of_range("input symbol");
    flat = flat * inputs_[k] + x[k];
  }
  return flat;
}

std::vector<size_t> DiscreteMac::unflatten(size_t flat) const {
  std::vector<size_t> x(inputs_.size());
  for (size_t k = inputs_.size(); k-- > 0;) {
    x[k] = flat % inputs_[k];
    flat /= inputs_[k];
  }
  return x;
}

const double* DiscreteMac::slice(const std::vector<size_t>& x) const {
  return cond_.data() + flatten(x) * ny_;
}

int DiscreteMac::sample(const std::vector<size_t>& x, RngStream& rng) const {
  const double* p = slice(x);
  double u = rng.uniform01();
  double acc = 0;
  for (size_t y = 0; y + 1 < ny_; ++y) {
    acc += p[y];
    if (u < acc) return static_cast<int>(y);
  }
  return static_cast<int>(ny_ - 1);
}

SymbolMapping SymbolMapping::identity(size_t n) {
  SymbolMapping m;
  m.index.resize(n);
  for (size_t i = 0; i < n; ++i) m.index[i] = i;
  return m;
}

SymbolMapping SymbolMapping::reals(std::vector<double> xs) {
  SymbolMapping m;
  m.real = std::move(xs);
  return m;
}

GaussianMac::GaussianMac(std::vector<double> gains, std::vector<double> powers)
    : h(std::move(gains)), power(std::move(powers)) {
  if (h.empty() || h.size() != power.size())
    throw std::invalid_argument("gaussian mac needs matching gains and powers");
  for (double p : power)
    if (!(p > 0)) throw std::invalid_argument("powers must be positive");
}

OutputQuantizer::OutputQuantizer(int resolution) : j(resolution) {
  if (j < 1) throw std::invalid_argument("quantizer resolution must be >= 1");
}

OutputQuantizer OutputQuantizer::auto_for(const GaussianMac& mac,
                                          const std::vector<SymbolMapping>& maps,
                                          const std::vector<Pmf>& pmfs) {
  if (maps.size() != mac.users() || pmfs.size() != mac.users())
    throw std::invalid_argument("per-user maps and pmfs required");
  double max_mean = 0, var_sum = 1.0;  // unit noise variance
  for (size_t k = 0; k < mac.users(); ++k) {
    const auto& xs = maps[k].real;
    if (xs.size() != pmfs[k].size())
      throw std::invalid_argument("map domain mismatch");
    double peak = 0, m1 = 0, m2 = 0;
    for (size_t u = 0; u < xs.size(); ++u) {
      if (pmfs[k][u] > 0) peak = std::max(peak, std::fabs(xs[u]));
      m1 += pmfs[k][u] * xs[u];
      m2 += pmfs[k][u] * xs[u] * xs[u];
    }
    max_mean += std::fabs(mac.h[k]) * peak;
    var_sum += mac.h[k] * mac.h[k] * std::max(0.0, m2 - m1 * m1);
  }
  double range = max_mean + 8.0 * std::sqrt(var_sum);
  int j = static_cast<int>(std::ceil(range * range));
  return OutputQuantizer(std::max(400, j));
}

size_t OutputQuantizer::bin_of(double y) const {
  double d = delta();
  long long k = std::llround(y / d);
  if (k < -j) k = -j;
  if (k > j) k = j;
  return static_cast<size_t>(k + j);
}

DiscreteMac induced_channel(const DiscreteMac& mac,
                            const std::vector<SymbolMapping>& maps) {
  if (maps.size() != mac.users())
    throw std::invalid_argument("one mapping per user required");
  std::vector<size_t> in_sizes;
  for (size_t k = 0; k < maps.size(); ++k) {
    if (maps[k].index.empty())
      throw std::invalid_argument("discrete channel needs index mappings");
    for (size_t xv : maps[k].index)
      if (xv >= mac.input_sizes()[k])
        throw std::invalid_argument("mapping range outside channel alphabet");
    in_sizes.push_back(maps[k].index.size());
  }
  size_t combos = 1;
  for (size_t s : in_sizes) combos *= s;
  std::vector<double> cond(combos * mac.output_size());
  std::vector<size_t> u(maps.size(), 0);
  for (size_t flat = 0; flat < combos; ++flat) {
    std::vector<size_t> x(maps.size());
    for (size_t k = 0; k < maps.size(); ++k) x[k] = maps[k].index[u[k]];
    const double* src = mac.slice(x);
    std::copy(src, src + mac.output_size(), cond.begin() + flat * mac.output_size());
    for (size_t k = maps.size(); k-- > 0;) {
      if (++u[k] < in_sizes[k]) break;
      u[k] = 0;
    }
  }
  return DiscreteMac(in_sizes, mac.output_size(), std::move(cond));
}

DiscreteMac induced_channel(const GaussianMac& mac,
                            const std::vector<SymbolMapping>& maps,
                            const OutputQuantizer& quant) {
  if (maps.size() != mac.users())
    throw std::invalid_argument("one mapping per user required");
  std::vector<size_t> in_sizes;
  for (const auto& m : maps) {
    if (m.real.empty())
      throw std::invalid_argument("gaussian channel needs real mappings");
    in_sizes.push_back(m.real.size());
  }
  size_t combos = 1;
  for (size_t s : in_sizes) combos *= s;
  const size_t ny = quant.bins();
  const double d = quant.delta();
  std::vector<double> cond(combos * ny);

  std::vector<size_t> u(maps.size(), 0);
  for (size_t flat = 0; flat < combos; ++flat) {
    double mean = 0;
    for (size_t k = 0; k < maps.size(); ++k) mean += mac.h[k] * maps[k].real[u[k]];
    double* row = cond.data() + flat * ny;
    // interior bins are cdf differences; end bins absorb the tails
    double prev = 0.0;  // cdf of lower edge of current bin
    for (size_t b = 0; b < ny; ++b) {
      long long k = static_cast<long long>(b) - quant.j;
      double hi_edge = (static_cast<double>(k) + 0.5) * d;
      double hi = (b + 1 == ny) ? 1.0 : std_normal_cdf(hi_edge - mean);
      row[b] = hi - prev;
      if (row[b] < 0) row[b] = 0;
      prev = hi;
    }
    for (size_t k = maps.size(); k-- > 0;) {
      if (++u[k] < in_sizes[k]) break;
      u[k] = 0;
    }
  }
  return DiscreteMac(in_sizes, ny, std::move(cond));
}

void check_power(const GaussianMac& mac, const std::vector<SymbolMapping>& maps,
                 const std::vector<Pmf>& pmfs) {
  for (size_t k = 0; k < mac.users(); ++k) {
    double e2 = 0;
    for (size_t u = 0; u < maps[k].real.size(); ++u)
      e2 += pmfs[k][u] * maps[k].real[u] * maps[k].real[u];
    if (e2 > mac.power[k] + 1e-9)
      throw std::invalid_argument("average power constraint violated for user " +
                                  std::to_string(k + 1));
  }
}

DiscreteMac builtin_bmm() {
  // Y = X1 * X2 on binary alphabets
  std::vector<double> cond(8, 0.0);
  for (size_t x1 = 0; x1 < 2; ++x1)
    for (size_t x2 = 0; x2 < 2; ++x2) cond[(x1 * 2 + x2) * 2 + (x1 & x2)] = 1.0;
  return DiscreteMac({2, 2}, 2, std::move(cond));
}

GaussianMac builtin_sym_gaussian(double power) {
  return GaussianMac({1.0, 1.0}, {power, power});
}

Example4 builtin_example4(double p1, double p2, double h) {
  return Example4{GaussianMac({1.0, h}, {p1, p2}),
                  GaussianMac({1.0, 1.0}, {p1, p2})};
}

std::string dm_mac_to_json(const DiscreteMac& mac) {
  nlohmann::json j;
  j["type"] = "dm_mac";
  j["K"] = mac.users();
  j["inputs"] = mac.input_sizes();
  j["output"] = mac.output_size();
  j["cond"] = mac.cond();
  return j.dump();
}

std::string gaussian_mac_to_json(const GaussianMac& mac) {
  nlohmann::json j;
  j["type"] = "gaussian_mac";
  j["h"] = mac.h;
  j["power"] = mac.power;
  return j.dump();
}

}  // namespace cfkit
