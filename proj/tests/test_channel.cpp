#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "channel.hpp"
#include "json.hpp"
#include "prob.hpp"

using namespace cfkit;

namespace {

double joint_mi(const DiscreteMac& mac, const std::vector<Pmf>& pmfs) {
  // I(U1, U2; Y) by direct enumeration (independent inputs)
  const size_t ny = mac.output_size();
  std::vector<double> py(ny, 0.0);
  double h_y_given = 0;
  for (size_t flat = 0; flat < mac.input_combos(); ++flat) {
    auto u = mac.unflatten(flat);
    double w = 1.0;
    for (size_t k = 0; k < pmfs.size(); ++k) w *= pmfs[k][u[k]];
    const double* row = mac.cond().data() + flat * ny;
    double h = 0;
    for (size_t y = 0; y < ny; ++y) {
      py[y] += w * row[y];
      if (row[y] > 0) h -= row[y] * std::log2(row[y]);
    }
    h_y_given += w * h;
  }
  double hy = 0;
  for (double v : py)
    if (v > 0) hy -= v * std::log2(v);
  return hy - h_y_given;
}

// high-precision unquantized I(X1, X2; Y) for BPSK over the unit-noise sum
// channel, via fine Riemann quadrature (independent oracle)
double bpsk_mi_quadrature(double P) {
  double s = std::sqrt(P);
  double mus[4] = {-2 * s, 0.0, 0.0, 2 * s};
  auto phi = [](double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2 * M_PI);
  };
  double lo = -2 * s - 10, hi = 2 * s + 10, step = 1e-3;
  double hy = 0;
  for (double y = lo; y <= hi; y += step) {
    double f = 0;
    for (double m : mus) f += 0.25 * phi(y - m);
    if (f > 0) hy -= f * std::log2(f) * step;
  }
  double h_noise = 0.5 * std::log2(2 * M_PI * M_E);
  return hy - h_noise;
}

}  // namespace

TEST_CASE("conditional slices validate") {
  CHECK_THROWS_AS(DiscreteMac({2, 2}, 2, std::vector<double>(8, 0.3)),
                  std::invalid_argument);
  DiscreteMac bmm = builtin_bmm();
  CHECK(bmm.users() == 2);
  CHECK(bmm.prob({1, 1}, 1) == 1.0);
  CHECK(bmm.prob({1, 0}, 0) == 1.0);
  CHECK(bmm.prob({0, 1}, 1) == 0.0);
}

TEST_CASE("identity maps keep the tensor") {
  DiscreteMac bmm = builtin_bmm();
  auto induced = induced_channel(
      bmm, {SymbolMapping::identity(2), SymbolMapping::identity(2)});
  CHECK(induced.cond() == bmm.cond());
}

TEST_CASE("induced channel commutes with input relabeling") {
  DiscreteMac bmm = builtin_bmm();
  // swap user-1 labels, then map back through the inverse relabeling
  SymbolMapping swap;
  swap.index = {1, 0};
  auto once = induced_channel(bmm, {swap, SymbolMapping::identity(2)});
  auto twice = induced_channel(once, {swap, SymbolMapping::identity(2)});
  CHECK(twice.cond() == bmm.cond());
}

TEST_CASE("gaussian quantizer geometry") {
  OutputQuantizer q(400);
  CHECK(q.bins() == 801);
  CHECK(q.delta() == doctest::Approx(0.05));
  CHECK(q.bin_of(0.0) == 400);
  CHECK(q.bin_of(1e9) == 800);
  CHECK(q.bin_of(-1e9) == 0);
  CHECK_THROWS_AS(OutputQuantizer(0), std::invalid_argument);
}

TEST_CASE("quantized gaussian: valid slices, mutual-information convergence") {
  double P = 1.0;
  GaussianMac mac = builtin_sym_gaussian(P);
  double s = std::sqrt(P);
  std::vector<SymbolMapping> maps{SymbolMapping::reals({-s, s}),
                                  SymbolMapping::reals({-s, s})};
  std::vector<Pmf> pmfs{Pmf::uniform(2), Pmf::uniform(2)};
  check_power(mac, maps, pmfs);

  double i_exact = bpsk_mi_quadrature(P);
  double prev = 0;
  for (int j : {400, 800, 1600}) {
    DiscreteMac induced = induced_channel(mac, maps, OutputQuantizer(j));
    // every slice sums to one exactly (construction guarantees it; the
    // constructor would have thrown otherwise)
    double i = joint_mi(induced, pmfs);
    CHECK(i == doctest::Approx(i_exact).epsilon(2e-3));
    CHECK(std::fabs(i - i_exact) < 1e-3);
    CHECK(i >= prev - 1e-12);  // nondecreasing refinement
    if (j > 400) CHECK(std::fabs(i - prev) < 1e-3);
    prev = i;
  }
}

TEST_CASE("power constraint enforcement") {
  GaussianMac mac = builtin_sym_gaussian(1.0);
  std::vector<Pmf> pmfs{Pmf::uniform(2), Pmf::uniform(2)};
  std::vector<SymbolMapping> over{SymbolMapping::reals({-1.1, 1.1}),
                                  SymbolMapping::reals({-1.0, 1.0})};
  CHECK_THROWS_AS(check_power(mac, over, pmfs), std::invalid_argument);
}

TEST_CASE("sampling: determinism and frequencies") {
  DiscreteMac bmm = builtin_bmm();
  RngStream a(99), b(99);
  for (int i = 0; i < 200; ++i)
    CHECK(bmm.sample({1, 1}, a) == bmm.sample({1, 1}, b));
  CHECK(bmm.sample({1, 0}, a) == 0);  // deterministic channel

  // uniform conditional: chi-square-ish 3-sigma band over 1e5 draws
  DiscreteMac unif({2}, 4, std::vector<double>{0.25, 0.25, 0.25, 0.25,
                                               0.25, 0.25, 0.25, 0.25});
  RngStream rng(7);
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[unif.sample({0}, rng)];
  for (int y = 0; y < 4; ++y) {
    double sigma = std::sqrt(n * 0.25 * 0.75);
    CHECK(std::fabs(counts[y] - n * 0.25) < 3 * sigma);
  }
}

TEST_CASE("builtins match their definitions") {
  Example4 net = builtin_example4();
  CHECK(net.rx1.h[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK(net.rx1.power[0] == 25.0);
  CHECK(net.rx1.power[1] == 18.0);
  CHECK(net.rx2.h[0] == 1.0);
  CHECK(net.rx2.h[1] == 1.0);
  GaussianMac sym = builtin_sym_gaussian(1.0);
  CHECK(sym.h == std::vector<double>{1.0, 1.0});
  CHECK(sym.power == std::vector<double>{1.0, 1.0});
}

TEST_CASE("channel json round-trips bit-exactly") {
  GaussianMac g({1.0, 1.4142135623730951}, {25.0, 18.0});
  std::string text = gaussian_mac_to_json(g);
  auto j = nlohmann::json::parse(text);
  CHECK(j.at("h").get<std::vector<double>>() == g.h);
  CHECK(j.at("power").get<std::vector<double>>() == g.power);

  DiscreteMac bmm = builtin_bmm();
  auto j2 = nlohmann::json::parse(dm_mac_to_json(bmm));
  DiscreteMac back(j2.at("inputs").get<std::vector<size_t>>(),
                   j2.at("output").get<size_t>(),
                   j2.at("cond").get<std::vector<double>>());
  CHECK(back.cond() == bmm.cond());
}
