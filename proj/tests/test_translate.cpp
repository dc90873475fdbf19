#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "translate.hpp"

using namespace cfkit;

TEST_CASE("primality helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(37));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(39));
  CHECK(next_prime_at_least(33) == 37);
  CHECK(next_prime_at_least(37) == 37);
}

TEST_CASE("minimal prime for the translation plan") {
  // K = 2, a = [1, 1], U in {-3, -1, 1, 3}: Gamma = 3 -> q >= 4 * 9 + 1 = 37
  TranslationPlan plan = min_prime_q({{1, 1}}, {{-3, -1, 1, 3}, {-3, -1, 1, 3}});
  CHECK(plan.q == 37);
  CHECK(plan.gamma == 3);
  CHECK(plan.coeff_bound == 1);

  // binary alphabets: q = 5
  CHECK(min_prime_q({{1, 1}}, {{0, 1}, {0, 1}}).q == 5);

  // all-zero coefficient row: q driven by Gamma alone
  TranslationPlan z = min_prime_q({{0, 0}}, {{-2, 2}, {-2, 2}});
  CHECK(z.coeff_bound == 0);
  CHECK(z.q == next_prime_at_least(2 * 2 * 4 + 1));

  CHECK_THROWS_AS(min_prime_q({{1, 1}}, {}), std::invalid_argument);
}

TEST_CASE("verification accepts valid plans and finds wraparound witnesses") {
  std::vector<std::vector<int64_t>> pam{{-3, -1, 1, 3}, {-3, -1, 1, 3}};
  TranslationPlan plan = min_prime_q({{1, 1}}, pam);
  CHECK(verify_translation(plan, {{1, 1}}, pam));

  // deliberately undersized prime: u1 = u2 = 3 wraps at q = 7
  TranslationPlan bad = plan;
  bad.q = 7;
  CHECK_FALSE(verify_translation(bad, {{1, 1}}, pam));

  // degenerate all-zero alphabet works for any odd prime
  TranslationPlan tiny{3, 0, 1, 2};
  CHECK(verify_translation(tiny, {{1, 1}}, {{0}, {0}}));
}

TEST_CASE("self-consistency over random instances") {
  std::mt19937_64 rng(99);
  auto randint = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int t = 0; t < 50; ++t) {
    int users = randint(2, 3);
    std::vector<std::vector<int64_t>> alphabets(users);
    for (auto& alpha : alphabets) {
      int size = randint(2, 4);
      for (int i = 0; i < size; ++i) alpha.push_back(randint(-5, 5));
    }
    std::vector<std::vector<int64_t>> coeffs(1);
    for (int k = 0; k < users; ++k) coeffs[0].push_back(randint(-4, 4));
    TranslationPlan plan = min_prime_q(coeffs, alphabets);
    CAPTURE(plan.q);
    CHECK(verify_translation(plan, coeffs, alphabets));
  }
}

TEST_CASE("monotonicity of the minimal prime") {
  auto q_of = [](int64_t gamma, int64_t coeff) {
    std::vector<std::vector<int64_t>> alpha{{-gamma, gamma}, {-gamma, gamma}};
    return min_prime_q({{coeff, coeff}}, alpha).q;
  };
  for (int g = 1; g < 5; ++g) CHECK(q_of(g, 1) <= q_of(g + 1, 1));
  for (int c = 1; c < 5; ++c) CHECK(q_of(1, c) <= q_of(1, c + 1));
}
