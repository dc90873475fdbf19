#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>

#include "channel.hpp"
#include "simulate.hpp"

using namespace cfkit;

namespace {

std::shared_ptr<const FiniteField> f2 = std::make_shared<const FiniteField>(2);

DiscreteMac orthogonal_channel() {
  std::vector<double> cond(16, 0.0);
  for (size_t u1 = 0; u1 < 2; ++u1)
    for (size_t u2 = 0; u2 < 2; ++u2) cond[(u1 * 2 + u2) * 4 + (u1 * 2 + u2)] = 1;
  return DiscreteMac({2, 2}, 4, cond);
}

}  // namespace

TEST_CASE("codebook generation is seed-deterministic") {
  IndexLayout lay = IndexLayout::make({2, 2}, {2, 2});
  NestedLinearCode a(f2, 8, lay, 12345), b(f2, 8, lay, 12345), c(f2, 8, lay, 999);
  CHECK(a.generator() == b.generator());
  CHECK(a.dither(0) == b.dither(0));
  CHECK(a.dither(1) == b.dither(1));
  CHECK(a.generator() != c.generator());
  CHECK(a.messages(0) == 4);
  CHECK(a.aux_indices(0) == 4);
  CHECK(a.rate(0) == doctest::Approx(0.25));
}

TEST_CASE("codeword linearity: u(m, l) - d = eta(m, l) G") {
  for (int q : {2, 3, 4}) {
    CAPTURE(q);
    auto f = std::make_shared<const FiniteField>(q);
    IndexLayout lay = IndexLayout::make({1, 1}, {1, 1});
    NestedLinearCode code(f, 6, lay, 77);
    for (uint64_t m = 0; m < code.messages(0); ++m)
      for (uint64_t l = 0; l < code.aux_indices(0); ++l) {
        Digits u = code.codeword(0, m, l);
        // subtract dither, compare against direct eta * G
        Digits eta = eta_embed(m, l, 0, lay, *f);
        for (int i = 0; i < 6; ++i) {
          int acc = 0;
          for (int r = 0; r < lay.kappa; ++r)
            acc = f->add(acc, f->mul(eta[r], code.generator()[r][i]));
          CHECK(f->sub(u[i], code.dither(0)[i]) == acc);
        }
      }
    // same-user codeword differences equal (eta - eta') G for all pairs
    NestedLinearCode small(f, 4, IndexLayout::make({1, 0}, {1, 1}), 3);
    auto all = [&](int user) {
      std::vector<std::pair<Digits, Digits>> out;  // (eta, codeword)
      for (uint64_t m = 0; m < small.messages(user); ++m)
        for (uint64_t l = 0; l < small.aux_indices(user); ++l)
          out.push_back({eta_embed(m, l, user, small.layout(), *f),
                         small.codeword(user, m, l)});
      return out;
    };
    for (const auto& [ea, ua] : all(0))
      for (const auto& [eb, ub] : all(0))
        for (int i = 0; i < 4; ++i) {
          int diff = f->sub(ua[i], ub[i]);
          int acc = 0;
          for (int r = 0; r < small.layout().kappa; ++r)
            acc = f->add(acc, f->mul(f->sub(ea[r], eb[r]),
                                     small.generator()[r][i]));
          CHECK(diff == acc);
        }
  }
}

TEST_CASE("encoder: uniform targets need no shaping") {
  IndexLayout lay = IndexLayout::make({2}, {2});
  size_t fallbacks = 0;
  for (uint64_t s = 0; s < 200; ++s) {
    NestedLinearCode code(f2, 8, lay, s);
    RngStream rng(s, {1});
    EncodeResult enc = encode_user(code, 0, 1, Pmf::uniform(2), 0.2, rng);
    if (enc.fallback) ++fallbacks;
    else CHECK(is_typical(enc.codeword, Pmf::uniform(2), 0.2));
  }
  // exact balanced types are common at n = 8; failures are rare
  CHECK(fallbacks < 100);
}

TEST_CASE("encoder failure frequency tracks the covering threshold") {
  // p = 0.85: D(p || unif) ~ 0.39 bits
  Pmf p = Pmf::bernoulli(0.85);
  double D = kl_divergence(p, Pmf::uniform(2));
  CHECK(D == doctest::Approx(0.39).epsilon(0.02));

  auto failure_freq = [&](int n, double aux_rate, double eps_prime, int books) {
    int digits = static_cast<int>(std::llround(aux_rate * n));
    IndexLayout lay = IndexLayout::make({0}, {digits});
    size_t fails = 0;
    for (int s = 0; s < books; ++s) {
      NestedLinearCode code(f2, n, lay, split_seed(5150, {static_cast<uint64_t>(s)}));
      RngStream rng(s);
      if (encode_user(code, 0, 0, p, eps_prime, rng).fallback) ++fails;
    }
    return static_cast<double>(fails) / books;
  };
  // far below the threshold: failures dominate (n = 12, R^ = 1/12)
  CHECK(failure_freq(12, 0.05, 0.45, 500) > 0.5);
  // 0.2 bits above the threshold at n = 24: failures are rare
  CHECK(failure_freq(24, D + 0.2, 0.45, 500) < 0.1);
}

TEST_CASE("single-combination decoding over the noiseless orthogonal channel") {
  DiscreteMac chan = orthogonal_channel();
  std::vector<Pmf> pmfs{Pmf::uniform(2), Pmf::uniform(2)};
  IndexLayout lay = IndexLayout::make({3, 3}, {0, 0});
  size_t correct = 0, trials = 50;
  for (uint64_t t = 0; t < trials; ++t) {
    NestedLinearCode code(f2, 12, lay, split_seed(8, {t}));
    RngStream ms(8, {t, 1});
    uint64_t m1 = ms.below(8), m2 = ms.below(8);
    Digits u1 = code.codeword(0, m1, 0), u2 = code.codeword(1, m2, 0);
    std::vector<int> y(12);
    for (int i = 0; i < 12; ++i) y[i] = u1[i] * 2 + u2[i];
    DecodeOutcome out = decode_single(code, pmfs, chan, y, {1, 1}, 0.35, 1 << 22);
    Digits truth = code.combination_index({1, 1}, {m1, m2}, {0, 0});
    if (out.kind == DecodeOutcome::Kind::Decoded && out.s == truth) ++correct;
    // decoded index always satisfies the combination identity by
    // construction; verify against a recomputation through eta
    if (out.kind == DecodeOutcome::Kind::Decoded) {
      CHECK(out.s.size() == static_cast<size_t>(lay.kappa));
    }
  }
  // noiseless observation reveals both codewords whenever the realized pair
  // is jointly typical; atypical draws surface as NoCandidate, never as a
  // wrong index
  CHECK(correct > 25);
  for (uint64_t t = 0; t < trials; ++t) {
    NestedLinearCode code(f2, 12, lay, split_seed(8, {t}));
    RngStream ms(8, {t, 1});
    uint64_t m1 = ms.below(8), m2 = ms.below(8);
    Digits u1 = code.codeword(0, m1, 0), u2 = code.codeword(1, m2, 0);
    std::vector<int> y(12);
    for (int i = 0; i < 12; ++i) y[i] = u1[i] * 2 + u2[i];
    DecodeOutcome out = decode_single(code, pmfs, chan, y, {1, 1}, 0.35, 1 << 22);
    if (out.kind == DecodeOutcome::Kind::Decoded)
      CHECK(out.s == code.combination_index({1, 1}, {m1, m2}, {0, 0}));
  }
}

TEST_CASE("pair decoding: identity coefficients on the orthogonal channel") {
  DiscreteMac chan = orthogonal_channel();
  std::vector<Pmf> pmfs{Pmf::uniform(2), Pmf::uniform(2)};
  SimConfig cfg{chan, pmfs, 2, 24, {0.25, 0.25}, {0.0, 0.0}, {1, 0},
                std::vector<int64_t>{0, 1}, 0.5, 0.25, 400, 11, 22.0};
  SimReport rep = simulate_point(cfg);
  // rates deep inside the region: only atypical draws fail
  CHECK(rep.error_rate < 0.1);

  NestedLinearCode code(f2, 8, IndexLayout::make({2, 2}, {0, 0}), 5);
  std::vector<int> y(8, 0);
  CHECK_THROWS_AS(
      decode_pair(code, pmfs, chan, y, {1, 1}, {1, 1}, 0.3, 1 << 22),
      std::invalid_argument);
}

TEST_CASE("budget enforcement") {
  DiscreteMac chan = builtin_bmm();
  std::vector<Pmf> pmfs{Pmf::bernoulli(0.7331), Pmf::bernoulli(0.7331)};
  SimConfig cfg{chan, pmfs, 2, 16, {0.7, 0.7}, {}, {1, 1},
                std::nullopt, 0.2, 0.1, 10, 1, 22.0};
  CHECK_THROWS_AS(simulate_point(cfg), std::runtime_error);
}

TEST_CASE("simulation campaigns are reproducible from the master seed") {
  DiscreteMac chan = builtin_bmm();
  std::vector<Pmf> pmfs{Pmf::bernoulli(0.7331), Pmf::bernoulli(0.7331)};
  SimConfig cfg{chan, pmfs, 2, 12, {0.38, 0.38}, {}, {1, 1},
                std::nullopt, 0.35, 0.2, 300, 42, 24.0};
  SimReport a = simulate_point(cfg);
  SimReport b = simulate_point(cfg);
  CHECK(a.errors == b.errors);
  CHECK(a.encode_fallbacks == b.encode_fallbacks);
  CHECK(a.none == b.none);
  CHECK(a.ambiguous == b.ambiguous);
  cfg.seed = 43;
  SimReport c = simulate_point(cfg);
  CHECK((c.errors != a.errors || c.none != a.none || c.ambiguous != a.ambiguous));
}

TEST_CASE("wilson intervals") {
  double lo, hi;
  wilson_interval(0, 100, &lo, &hi);
  CHECK(lo == 0.0);
  CHECK(hi == doctest::Approx(0.0370).epsilon(1e-2));
  wilson_interval(50, 100, &lo, &hi);
  CHECK(lo == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(hi == doctest::Approx(0.5962).epsilon(1e-3));
  wilson_interval(100, 100, &lo, &hi);
  CHECK(hi == 1.0);
}

TEST_CASE("chi-square p-values") {
  // chi2(1) at 3.841: p ~ 0.05
  CHECK(chi_square_pvalue(3.841, 1) == doctest::Approx(0.05).epsilon(2e-3));
  CHECK(chi_square_pvalue(0.0, 5) == doctest::Approx(1.0));
  // chi2(10) at 18.307: p ~ 0.05
  CHECK(chi_square_pvalue(18.307, 10) == doctest::Approx(0.05).epsilon(2e-3));
}

TEST_CASE("ensemble statistics battery") {
  // smaller sample counts than the acceptance run, same structure
  ChiSquareReport u = check_uniformity(2, 6, 2, 30000, 1001);
  CHECK(u.pass);
  ChiSquareReport pw = check_pairwise_independence(2, 4, 2, 30000, 1002);
  CHECK(pw.pass);
  ChiSquareReport fr = check_fullrank_independence(2, 4, 2, 30000, 1003);
  CHECK(fr.pass);
  ChiSquareReport iu =
      check_index_uniformity(2, 6, 2, 2, Pmf::bernoulli(0.7331), 0.1, 30000, 1004);
  CHECK(iu.pass);
}

TEST_CASE("exhaustive index-set counts match the rank formulas") {
  for (int q : {2, 3}) {
    CAPTURE(q);
    IndexSetReport rep = check_index_set_counts(q, 2, 2);
    uint64_t base = 1;
    for (int i = 0; i < 4; ++i) base *= q;
    CHECK(rep.counts[0] == base);  // |I_K| = q^{n1 + n2} exactly
    CHECK(rep.counts[1] <= rep.bounds[1]);
    CHECK(rep.counts[2] <= rep.bounds[2]);
    CHECK(rep.counts[0] + rep.counts[1] + rep.counts[2] == base * base);
    CHECK(rep.pass);
  }
}

TEST_CASE("mismatched-typicality exponent at n = 24") {
  ExponentReport rep =
      check_mismatched_exponent(0.8, 1.0 / 3.0, 0.4, 24, 400000, 0.15, 31);
  CHECK(rep.hits > 0);
  CHECK(std::fabs(rep.empirical - rep.target) <= 0.15);
  CHECK(rep.pass);
  // exact-probability cross-check: hit rate should sit near the closed-form
  // count 19110 / 2^24 adjusted for the eps = 0.4 windows (computed
  // combinatorially during design: P = 2.35e-3)
  double rate = static_cast<double>(rep.hits) / rep.samples;
  CHECK(rate == doctest::Approx(2.35e-3).epsilon(0.1));
}
