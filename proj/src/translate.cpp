#include "translate.hpp"

#include <cmath>
#include <stdexcept>

#include "gf.hpp"

namespace cfkit {

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int next_prime_at_least(int64_t n) {
  if (n < 2) n = 2;
  while (!is_prime(n)) ++n;
  if (n > (1 << 30)) throw std::overflow_error("prime search overflow");
  return static_cast<int>(n);
}

TranslationPlan min_prime_q(const std::vector<std::vector<int64_t>>& coeffs,
                            const std::vector<std::vector<int64_t>>& alphabets) {
  if (alphabets.empty()) throw std::invalid_argument("no alphabets");
  TranslationPlan plan;
  plan.users = static_cast<int>(alphabets.size());
  for (const auto& alpha : alphabets) {
    if (alpha.empty()) throw std::invalid_argument("empty alphabet");
    for (int64_t v : alpha) plan.gamma = std::max<int64_t>(plan.gamma, std::llabs(v));
  }
  for (const auto& row : coeffs)
    for (int64_t c : row) plan.coeff_bound = std::max<int64_t>(plan.coeff_bound, std::llabs(c));
  int64_t m = std::max(plan.gamma, plan.coeff_bound);
  // floor(sqrt((q-1)/(2K))) >= m  <=>  q >= 2K m^2 + 1
  int64_t lo = 2 * plan.users * m * m + 1;
  plan.q = next_prime_at_least(std::max<int64_t>(lo, 3));
  return plan;
}

bool verify_translation(const TranslationPlan& plan,
                        const std::vector<std::vector<int64_t>>& coeffs,
                        const std::vector<std::vector<int64_t>>& alphabets) {
  FiniteField f(plan.q);
  const size_t k = alphabets.size();
  std::vector<size_t> idx(k, 0);
  bool done = false;
  while (!done) {
    for (const auto& row : coeffs) {
      if (row.size() != k) throw std::invalid_argument("coefficient arity");
      int64_t real_sum = 0;
      int field_sum = 0;
      for (size_t u = 0; u < k; ++u) {
        int64_t val = alphabets[u][idx[u]];
        real_sum += row[u] * val;
        field_sum = f.add(field_sum, f.mul(f.from_signed(row[u]), f.from_signed(val)));
      }
      if (f.to_signed(field_sum) != real_sum) return false;
    }
    done = true;
    for (size_t a = k; a-- > 0;) {
      if (++idx[a] < alphabets[a].size()) {
        done = false;
        break;
      }
      idx[a] = 0;
    }
  }
  return true;
}

}  // namespace cfkit
