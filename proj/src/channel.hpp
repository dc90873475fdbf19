#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prob.hpp"
#include "util.hpp"

namespace cfkit {

// Discrete memoryless MAC: P(y | x_1, ..., x_K) stored row-major over
// (x_1, ..., x_K, y). Immutable after construction.
class DiscreteMac {
 public:
  DiscreteMac(std::vector<size_t> input_sizes, size_t output_size,
              std::vector<double> cond);

  size_t users() const { return inputs_.size(); }
  const std::vector<size_t>& input_sizes() const { return inputs_; }
  size_t output_size() const { return ny_; }
  const std::vector<double>& cond() const { return cond_; }

  // conditional pmf slice for a fixed input tuple
  const double* slice(const std::vector<size_t>& x) const;
  double prob(const std::vector<size_t>& x, size_t y) const {
    return slice(x)[y];
  }

  size_t input_combos() const { return combos_; }
  // flat index <-> input tuple
  size_t flatten(const std::vector<size_t>& x) const;
  std::vector<size_t> unflatten(size_t flat) const;

  int sample(const std::vector<size_t>& x, RngStream& rng) const;

 private:
  std::vector<size_t> inputs_;
  size_t ny_ = 0;
  size_t combos_ = 0;
  std::vector<double> cond_;
};

// Per-user symbol mapping u -> x. Discrete channels consume the index view,
// the Gaussian channel consumes the real view.
struct SymbolMapping {
  std::vector<double> real;    // used by GaussianMac
  std::vector<size_t> index;   // used by DiscreteMac

  static SymbolMapping identity(size_t n);
  static SymbolMapping reals(std::vector<double> xs);
  size_t domain() const { return real.empty() ? index.size() : real.size(); }
};

// Y = sum_k h_k X_k + Z with Z ~ N(0, 1). Average powers P_k.
struct GaussianMac {
  std::vector<double> h;
  std::vector<double> power;

  GaussianMac(std::vector<double> gains, std::vector<double> powers);
  size_t users() const { return h.size(); }
};

// Uniform output quantizer with resolution index j: bin centers
// {-j*delta, ..., j*delta}, delta = 1/sqrt(j); the two end bins absorb the
// tails so every conditional slice is a valid pmf.
struct OutputQuantizer {
  int j = 0;
  double delta() const { return 1.0 / std::sqrt(static_cast<double>(j)); }
  size_t bins() const { return static_cast<size_t>(2 * j + 1); }

  explicit OutputQuantizer(int resolution);
  // smallest j whose range covers the largest conditional mean plus eight
  // standard deviations of Y (floored at 400 for convergence)
  static OutputQuantizer auto_for(const GaussianMac& mac,
                                  const std::vector<SymbolMapping>& maps,
                                  const std::vector<Pmf>& pmfs);
  size_t bin_of(double y) const;
};

// P(y | u_1, ..., u_K) = P(y | x_1(u_1), ..., x_K(u_K))
DiscreteMac induced_channel(const DiscreteMac& mac,
                            const std::vector<SymbolMapping>& maps);
DiscreteMac induced_channel(const GaussianMac& mac,
                            const std::vector<SymbolMapping>& maps,
                            const OutputQuantizer& quant);

// Average power check: sum_u p(u) x(u)^2 <= P + 1e-9.
void check_power(const GaussianMac& mac, const std::vector<SymbolMapping>& maps,
                 const std::vector<Pmf>& pmfs);

// Built-in models.
DiscreteMac builtin_bmm();                       // Y = X1 * X2 on {0,1}
GaussianMac builtin_sym_gaussian(double power);  // gains [1,1], powers [P,P]
struct Example4 {
  GaussianMac rx1;  // Y1 = X1 + h X2 + Z1
  GaussianMac rx2;  // Y2 = X1 + X2 + Z2
};
Example4 builtin_example4(double p1 = 25.0, double p2 = 18.0,
                          double h = 1.4142135623730951);

// JSON channel specs (see README): round-trips bit-exactly.
std::string dm_mac_to_json(const DiscreteMac& mac);
std::string gaussian_mac_to_json(const GaussianMac& mac);

}  // namespace cfkit
