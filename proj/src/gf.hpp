#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cfkit {

// Finite field of order q. Prime q uses modular residue arithmetic; the
// prime powers 4, 8, 9, 16 use lookup tables built from a fixed irreducible
// polynomial. Elements are labels 0..q-1. Immutable after construction.
class FiniteField {
 public:
  explicit FiniteField(int q);

  int order() const { return q_; }
  bool is_prime() const { return prime_; }

  int add(int a, int b) const {
    return prime_ ? (a + b) % q_ : add_table_[a * q_ + b];
  }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int neg(int a) const { return prime_ ? (q_ - a) % q_ : neg_table_[a]; }
  int mul(int a, int b) const {
    return prime_ ? static_cast<int>((static_cast<int64_t>(a) * b) % q_)
                  : mul_table_[a * q_ + b];
  }
  int inv(int a) const;

  // Signed residue view {-(q-1)/2, ..., (q-1)/2}; odd prime q only.
  int64_t to_signed(int a) const;
  int from_signed(int64_t v) const;

  // Label multiples of an element, e.g. for enumerating scalar multiples.
  bool is_zero(int a) const { return a == 0; }

 private:
  int q_ = 0;
  bool prime_ = false;
  std::vector<int> add_table_, mul_table_, inv_table_, neg_table_;
};

using Digits = std::vector<int>;  // field-element digits, MSD first

// MSD-first q-ary expansion of m into `len` digits. Requires m < q^len.
Digits qary_expand(uint64_t m, int len, const FiniteField& f);
// Left inverse of qary_expand.
uint64_t qary_compose(const Digits& d, const FiniteField& f);

// Per-user digit layout of the index embedding [nu(m), nu(l), 0-pad].
struct IndexLayout {
  std::vector<int> msg_digits;  // message digit count per user
  std::vector<int> aux_digits;  // auxiliary digit count per user
  int kappa = 0;                // common embedded length

  int users() const { return static_cast<int>(msg_digits.size()); }
  int pad(int user) const {
    return kappa - msg_digits[user] - aux_digits[user];
  }
  static IndexLayout make(std::vector<int> msg, std::vector<int> aux);
};

// eta(m, l) = [nu(m), nu(l), 0] for the given user; length kappa.
Digits eta_embed(uint64_t m, uint64_t l, int user, const IndexLayout& layout,
                 const FiniteField& f);

// Gaussian-elimination rank of a matrix of field elements (rows of equal
// length).
int rank_over_field(const std::vector<Digits>& rows, const FiniteField& f);

}  // namespace cfkit
