#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "prob.hpp"

using namespace cfkit;

namespace {
double h2(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}
}  // namespace

TEST_CASE("pmf validation refuses bad mass") {
  CHECK_THROWS_AS(Pmf({0.5, 0.5001}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf({-0.1, 1.1}), std::invalid_argument);
  CHECK_NOTHROW(Pmf({0.25, 0.75}));
  CHECK_NOTHROW(Pmf({0.5, 0.5 + 0.9e-12}));
}

TEST_CASE("entropy basics") {
  CHECK(entropy(Pmf::uniform(4)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(entropy(Pmf::point_mass(5, 2)) == doctest::Approx(0.0));
  // direct binary entropy evaluation as the oracle
  CHECK(entropy(Pmf::bernoulli(0.7331)) ==
        doctest::Approx(h2(0.7331)).epsilon(1e-14));
  CHECK(h2(0.7331) == doctest::Approx(0.83694713).epsilon(1e-7));
}

TEST_CASE("kl divergence and the log q relation") {
  Pmf u2 = Pmf::uniform(2);
  CHECK(kl_divergence(u2, u2) == doctest::Approx(0.0));
  CHECK(kl_divergence(Pmf::bernoulli(0.3), Pmf::bernoulli(0.3)) ==
        doctest::Approx(0.0));
  // Bern(p) vs Unif(F_2) = 1 - h2(p)
  CHECK(kl_divergence(Pmf::bernoulli(0.85), u2) ==
        doctest::Approx(1 - h2(0.85)).epsilon(1e-12));
  CHECK(kl_divergence(Pmf::point_mass(2, 1), u2) == doctest::Approx(1.0));
  // support violation reports the infinite-divergence value
  CHECK(kl_divergence(Pmf::bernoulli(0.5), Pmf::point_mass(2, 1)) == kInfBits);

  // log2 q = H(p) + D(p || unif) for every pmf on F_q (machine precision)
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    size_t q = 2 + t % 7;
    std::vector<double> p(q);
    double tot = 0;
    for (auto& v : p) {
      v = std::uniform_real_distribution<>(0.01, 1.0)(rng);
      tot += v;
    }
    for (auto& v : p) v /= tot;
    Pmf pm(p);
    CHECK(entropy(pm) + kl_divergence(pm, Pmf::uniform(q)) ==
          doctest::Approx(std::log2(q)).epsilon(1e-12));
  }
}

TEST_CASE("joint pmf marginals, conditional entropy, chain rule") {
  // random joint over 3 x 4, checked against the chain rule
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> j(12);
    double tot = 0;
    for (auto& v : j) {
      v = std::uniform_real_distribution<>(0.0, 1.0)(rng);
      tot += v;
    }
    for (auto& v : j) v /= tot;
    JointPmf joint({3, 4}, j);
    double lhs = entropy(joint);
    double rhs = entropy(joint.marginal_pmf(0)) +
                 conditional_entropy(joint, {1}, {0});
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    CHECK(mutual_information(joint, {0}, {1}) >= -1e-12);
    CHECK(conditional_entropy(joint, {0}, {1}) <=
          entropy(joint.marginal_pmf(0)) + 1e-12);
  }
}

TEST_CASE("mutual information special cases") {
  // independent product
  JointPmf prod = JointPmf::product({Pmf::bernoulli(0.3), Pmf::bernoulli(0.8)});
  CHECK(mutual_information(prod, {0}, {1}) == doctest::Approx(0.0).epsilon(1e-12));
  // noiseless Y = X with X uniform binary: 1 bit
  JointPmf noiseless({2, 2}, {0.5, 0.0, 0.0, 0.5});
  CHECK(mutual_information(noiseless, {0}, {1}) == doctest::Approx(1.0));
  // binary multiplying MAC at p1 = p2 = 0.7331: I(U1,U2;Y) = h2(p^2),
  // from brute-force enumeration of the 2x2x2 joint
  double p = 0.7331;
  std::vector<double> j(8, 0.0);
  for (int u1 = 0; u1 < 2; ++u1)
    for (int u2 = 0; u2 < 2; ++u2) {
      double w = (u1 ? p : 1 - p) * (u2 ? p : 1 - p);
      j[(u1 * 2 + u2) * 2 + (u1 & u2)] += w;
    }
  JointPmf bmm({2, 2, 2}, j);
  CHECK(mutual_information(bmm, {0, 1}, {2}) ==
        doctest::Approx(h2(p * p)).epsilon(1e-12));
  CHECK_THROWS_AS(conditional_entropy(bmm, {0}, {0}), std::invalid_argument);
}

TEST_CASE("robust typicality") {
  Pmf p = Pmf::bernoulli(0.5);
  // exact type is typical for any eps
  std::vector<int> seq{0, 1, 0, 1, 0, 1, 0, 1};
  CHECK(is_typical(seq, p, 0.01));
  // symbol with zero probability is never typical
  Pmf q({1.0, 0.0});
  CHECK_FALSE(is_typical({0, 0, 1}, q, 0.9));
  CHECK(is_typical({0, 0, 0}, q, 0.01));
  // n = 10 Bern(0.5) with 7 ones at eps = 0.2: |0.7 - 0.5| > 0.1
  std::vector<int> seven_ones{1, 1, 1, 1, 1, 1, 1, 0, 0, 0};
  CHECK_FALSE(is_typical(seven_ones, p, 0.2));
  CHECK(is_typical(seven_ones, p, 0.5));

  Pmf type = empirical_type(seven_ones, 2);
  CHECK(type[1] == doctest::Approx(0.7));
}

TEST_CASE("law of large numbers smoke test") {
  // iid Bern(0.3) length 1e4: typical at eps = 0.1 in >= 99% of runs
  std::mt19937_64 rng(2024);
  Pmf p = Pmf::bernoulli(0.3);
  int good = 0, runs = 300;
  for (int r = 0; r < runs; ++r) {
    std::vector<int> seq(10000);
    for (auto& s : seq)
      s = std::uniform_real_distribution<>(0, 1)(rng) < 0.3 ? 1 : 0;
    if (is_typical(seq, p, 0.1)) ++good;
  }
  CHECK(static_cast<double>(good) / runs >= 0.99);
}

TEST_CASE("mismatched exponent and thresholds") {
  // p~ = p_X and X independent of Y: exponent 0
  JointPmf indep = JointPmf::product({Pmf::bernoulli(0.3), Pmf::bernoulli(0.6)});
  CHECK(mismatched_exponent(indep, Pmf::bernoulli(0.3)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // X independent of Y, p~ uniform: D(p_X || unif) = 1 - h2(p)
  CHECK(mismatched_exponent(indep, Pmf::uniform(2)) ==
        doctest::Approx(1 - h2(0.3)).epsilon(1e-12));
  // noiseless Y = X, X ~ Bern(0.7331), p~ uniform: 1 + (1 - h2(p))
  double p = 0.7331;
  JointPmf noiseless({2, 2}, {1 - p, 0.0, 0.0, p});
  CHECK(mismatched_exponent(noiseless, Pmf::uniform(2)) ==
        doctest::Approx(h2(p) + 1 + (1 - h2(p)) - h2(p)).epsilon(1e-12));

  // exponent >= mutual information, equality iff matched on the support
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> j(4);
    double tot = 0;
    for (auto& v : j) {
      v = std::uniform_real_distribution<>(0.02, 1.0)(rng);
      tot += v;
    }
    for (auto& v : j) v /= tot;
    JointPmf joint({2, 2}, j);
    double i = mutual_information(joint, {0}, {1});
    CHECK(mismatched_exponent(joint, Pmf::uniform(2)) >= i - 1e-12);
    Pmf px = joint.marginal_pmf(0);
    CHECK(mismatched_exponent(joint, px) == doctest::Approx(i).epsilon(1e-9));
  }

  // auxiliary-rate floor: covering threshold with X independent of Xhat and
  // target p_{U}: D(p_U || p_q)
  Pmf pu = Pmf::bernoulli(0.85);
  JointPmf cover = JointPmf::product({Pmf::uniform(2), pu});
  CHECK(covering_threshold(cover, Pmf::uniform(2)) ==
        doctest::Approx(kl_divergence(pu, Pmf::uniform(2))).epsilon(1e-12));
  // uniform target, independent pair: threshold 0
  JointPmf unif_pair = JointPmf::product({Pmf::uniform(2), Pmf::uniform(2)});
  CHECK(covering_threshold(unif_pair, Pmf::uniform(2)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // point-to-point decode threshold I(U;Y) + D(p_U || p_q)
  JointPmf uy({2, 2}, {0.15 * 0.9, 0.15 * 0.1, 0.85 * 0.2, 0.85 * 0.8});
  CHECK(packing_threshold(uy, Pmf::uniform(2)) ==
        doctest::Approx(mutual_information(uy, {0}, {1}) +
                        kl_divergence(uy.marginal_pmf(0), Pmf::uniform(2)))
            .epsilon(1e-12));
}

TEST_CASE("typicality parameter ordering enforced") {
  CHECK_THROWS_AS(TypicalityParams(0.1, 0.2), std::invalid_argument);
  CHECK_NOTHROW(TypicalityParams(0.2, 0.1));
}
