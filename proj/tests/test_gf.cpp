#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "gf.hpp"

using namespace cfkit;

namespace {

// Exhaustive field-axiom check; feasible for every supported order.
void check_field_axioms(const FiniteField& f) {
  const int q = f.order();
  for (int a = 0; a < q; ++a) {
    CHECK(f.add(a, 0) == a);
    CHECK(f.mul(a, 1) == a);
    CHECK(f.mul(a, 0) == 0);
    CHECK(f.add(a, f.neg(a)) == 0);
    if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    for (int b = 0; b < q; ++b) {
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      for (int c = 0; c < q; ++c) {
        CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  }
}

}  // namespace

TEST_CASE("field axioms hold for every supported order") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    CAPTURE(q);
    check_field_axioms(FiniteField(q));
  }
}

TEST_CASE("binary field is xor / and") {
  FiniteField f(2);
  CHECK(f.add(1, 1) == 0);
  CHECK(f.add(1, 0) == 1);
  CHECK(f.mul(1, 1) == 1);
  CHECK(f.mul(1, 0) == 0);
}

TEST_CASE("gf(4) addition is xor of 2-bit labels") {
  FiniteField f(4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(f.add(a, b) == (a ^ b));
}

TEST_CASE("non-prime-power orders are rejected by name") {
  CHECK_THROWS_WITH_AS(FiniteField(6),
                       doctest::Contains("6"), std::invalid_argument);
  CHECK_THROWS_AS(FiniteField(12), std::invalid_argument);
  CHECK_THROWS_AS(FiniteField(1), std::invalid_argument);
}

TEST_CASE("signed residues round-trip for odd primes") {
  FiniteField f(37);
  for (int a = 0; a < 37; ++a) {
    int64_t s = f.to_signed(a);
    CHECK(s >= -18);
    CHECK(s <= 18);
    CHECK(f.from_signed(s) == a);
  }
  CHECK(f.from_signed(-1) == 36);
  FiniteField f2(2);
  CHECK_THROWS_AS(f2.to_signed(1), std::domain_error);
  FiniteField f4(4);
  CHECK_THROWS_AS(f4.to_signed(1), std::domain_error);
}

TEST_CASE("qary expansion is msd-first and inverts") {
  FiniteField f2(2), f7(7), f4(4);
  CHECK(qary_expand(5, 4, f2) == Digits{0, 1, 0, 1});
  CHECK(qary_expand(0, 3, f7) == Digits{0, 0, 0});
  CHECK(qary_expand(7, 2, f4) == Digits{1, 3});
  CHECK_THROWS_AS(qary_expand(16, 4, f2), std::overflow_error);
  for (uint64_t m = 0; m < 81; ++m) {
    FiniteField f3(3);
    CHECK(qary_compose(qary_expand(m, 4, f3), f3) == m);
  }
}

TEST_CASE("eta embedding: layout, zero padding, injectivity") {
  FiniteField f(2);
  // user 0: 2 message digits + 1 aux digit; user 1: 1 + 1 -> kappa = 3
  IndexLayout lay = IndexLayout::make({2, 1}, {1, 1});
  CHECK(lay.kappa == 3);
  CHECK(lay.pad(1) == 1);

  CHECK(eta_embed(0, 0, 0, lay, f) == Digits{0, 0, 0});
  CHECK(eta_embed(0, 0, 1, lay, f) == Digits{0, 0, 0});
  // trailing zeros for the shorter user
  Digits e = eta_embed(1, 1, 1, lay, f);
  CHECK(e == Digits{1, 1, 0});

  std::set<Digits> seen;
  for (uint64_t m = 0; m < 4; ++m)
    for (uint64_t l = 0; l < 2; ++l) seen.insert(eta_embed(m, l, 0, lay, f));
  CHECK(seen.size() == 8);  // bijective in (m, l)
}

TEST_CASE("rank over fields") {
  FiniteField f2(2);
  CHECK(rank_over_field({{1, 0, 0}, {0, 1, 0}}, f2) == 2);
  CHECK(rank_over_field({{1, 1, 0}, {1, 1, 0}}, f2) == 1);
  CHECK(rank_over_field({{0, 0}, {0, 0}}, f2) == 0);

  // duplicated index rows (l = l~) keep rank K
  IndexLayout lay = IndexLayout::make({0, 0}, {2, 2});
  auto row = [&](int user, uint64_t l) {
    Digits r(2, 0);
    r[user] = 1;
    Digits eta = eta_embed(0, l, user, lay, f2);
    r.insert(r.end(), eta.begin(), eta.end());
    return r;
  };
  CHECK(rank_over_field({row(0, 3), row(1, 2), row(0, 3), row(1, 2)}, f2) == 2);
}

TEST_CASE("rank agrees with brute-force row-space counting") {
  // |rowspace| = q^rank, checked by enumerating all linear combinations
  for (int q : {2, 3}) {
    FiniteField f(q);
    uint64_t state = 12345;
    auto next = [&]() {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      return static_cast<int>((state >> 33) % q);
    };
    for (int trial = 0; trial < 40; ++trial) {
      size_t rows = 2 + trial % 3, cols = 4 + trial % 3;
      std::vector<Digits> m(rows, Digits(cols));
      for (auto& r : m)
        for (auto& v : r) v = next();
      std::set<Digits> span;
      std::vector<int> coeff(rows, 0);
      bool done = false;
      while (!done) {
        Digits combo(cols, 0);
        for (size_t r = 0; r < rows; ++r)
          for (size_t c = 0; c < cols; ++c)
            combo[c] = f.add(combo[c], f.mul(coeff[r], m[r][c]));
        span.insert(combo);
        done = true;
        for (size_t r = rows; r-- > 0;) {
          if (++coeff[r] < q) {
            done = false;
            break;
          }
          coeff[r] = 0;
        }
      }
      int rank = rank_over_field(m, f);
      uint64_t expect = 1;
      for (int i = 0; i < rank; ++i) expect *= q;
      CHECK(span.size() == expect);
    }
  }
}
