#pragma once

#include <cstdint>
#include <vector>

namespace cfkit {

// Translation-Lemma plan: a prime field large enough that the integer linear
// combinations of bounded inputs coincide with the field combinations under
// the signed residue map.
struct TranslationPlan {
  int q = 0;             // chosen prime
  int64_t gamma = 0;     // max_k max |U_k|
  int64_t coeff_bound = 0;
  int users = 0;
};

// Smallest prime q with max{coeff_bound, gamma} <= floor(sqrt((q-1)/(2K))).
TranslationPlan min_prime_q(const std::vector<std::vector<int64_t>>& coeffs,
                            const std::vector<std::vector<int64_t>>& alphabets);

// Exhaustive check that the real-valued sums match the field combinations.
bool verify_translation(const TranslationPlan& plan,
                        const std::vector<std::vector<int64_t>>& coeffs,
                        const std::vector<std::vector<int64_t>>& alphabets);

bool is_prime(int64_t n);
int next_prime_at_least(int64_t n);

}  // namespace cfkit
