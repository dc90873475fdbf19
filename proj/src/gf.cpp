#include "gf.hpp"

#include <stdexcept>

namespace cfkit {

namespace {

bool is_prime_int(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<int64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Irreducible polynomials for the supported prime powers, coefficients of
// x^m listed implicitly as the reduction mask: x^m = reduction(x).
struct ExtSpec {
  int p, m;
  int reduction;  // label of the reduction polynomial (degree < m)
};

ExtSpec ext_spec(int q) {
  switch (q) {
    case 4:  return {2, 2, 0b11};     // x^2 = x + 1
    case 8:  return {2, 3, 0b011};    // x^3 = x + 1
    case 16: return {2, 4, 0b0011};   // x^4 = x + 1
    case 9:  return {3, 2, 2};        // x^2 = 2  (x^2 + 1 irreducible mod 3)
    default: throw std::invalid_argument("unsupported extension order");
  }
}

// labels encode base-p digit vectors: label = sum_i c_i p^i
int poly_add(int a, int b, int p, int m) {
  int out = 0, mul = 1;
  for (int i = 0; i < m; ++i) {
    out += ((a % p + b % p) % p) * mul;
    a /= p; b /= p; mul *= p;
  }
  return out;
}

int poly_scale(int a, int c, int p, int m) {
  int out = 0, mul = 1;
  for (int i = 0; i < m; ++i) {
    out += ((a % p) * c % p) * mul;
    a /= p; mul *= p;
  }
  return out;
}

int poly_mul(int a, int b, const ExtSpec& s) {
  // schoolbook multiply with on-the-fly reduction of x^m
  int p = s.p, m = s.m;
  std::vector<int> prod(2 * m - 1, 0);
  std::vector<int> da(m), db(m);
  for (int i = 0; i < m; ++i) { da[i] = a % p; a /= p; }
  for (int i = 0; i < m; ++i) { db[i] = b % p; b /= p; }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  for (int d = 2 * m - 2; d >= m; --d) {
    int c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    int red = s.reduction;
    for (int i = 0; i < m; ++i) {
      prod[d - m + i] = (prod[d - m + i] + c * (red % p)) % p;
      red /= p;
    }
  }
  int out = 0, mul = 1;
  for (int i = 0; i < m; ++i) { out += prod[i] * mul; mul *= p; }
  return out;
}

}  // namespace

FiniteField::FiniteField(int q) : q_(q) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  if (is_prime_int(q)) {
    prime_ = true;
    return;
  }
  if (q != 4 && q != 8 && q != 9 && q != 16)
    throw std::invalid_argument("order " + std::to_string(q) +
                                " is not a supported field order");
  ExtSpec s = ext_spec(q);
  add_table_.resize(q * q);
  mul_table_.resize(q * q);
  neg_table_.resize(q);
  inv_table_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      add_table_[a * q + b] = poly_add(a, b, s.p, s.m);
      mul_table_[a * q + b] = poly_mul(a, b, s);
    }
  }
  for (int a = 0; a < q; ++a) {
    neg_table_[a] = poly_scale(a, s.p - 1, s.p, s.m);
    for (int b = 1; b < q; ++b)
      if (mul_table_[a * q + b] == 1) inv_table_[a] = b;
  }
}

int FiniteField::inv(int a) const {
  if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
  if (!prime_) return inv_table_[a];
  // Fermat: a^(q-2) mod q
  int64_t base = a, acc = 1, e = q_ - 2;
  while (e > 0) {
    if (e & 1) acc = acc * base % q_;
    base = base * base % q_;
    e >>= 1;
  }
  return static_cast<int>(acc);
}

int64_t FiniteField::to_signed(int a) const {
  if (!prime_ || q_ == 2)
    throw std::domain_error("signed residue view requires an odd prime order");
  return a <= (q_ - 1) / 2 ? a : a - q_;
}

int FiniteField::from_signed(int64_t v) const {
  if (!prime_ || q_ == 2)
    throw std::domain_error("signed residue view requires an odd prime order");
  int64_t r = v % q_;
  if (r < 0) r += q_;
  return static_cast<int>(r);
}

Digits qary_expand(uint64_t m, int len, const FiniteField& f) {
  const uint64_t q = f.order();
  Digits d(len, 0);
  for (int i = len - 1; i >= 0; --i) {
    d[i] = static_cast<int>(m % q);
    m /= q;
  }
  if (m != 0) throw std::overflow_error("index does not fit in the digit count");
  return d;
}

uint64_t qary_compose(const Digits& d, const FiniteField& f) {
  uint64_t out = 0;
  for (int v : d) out = out * f.order() + static_cast<uint64_t>(v);
  return out;
}

IndexLayout IndexLayout::make(std::vector<int> msg, std::vector<int> aux) {
  if (msg.size() != aux.size() || msg.empty())
    throw std::invalid_argument("layout needs matching per-user digit counts");
  IndexLayout lay;
  lay.msg_digits = std::move(msg);
  lay.aux_digits = std::move(aux);
  for (size_t k = 0; k < lay.msg_digits.size(); ++k) {
    if (lay.msg_digits[k] < 0 || lay.aux_digits[k] < 0)
      throw std::invalid_argument("digit counts must be nonnegative");
    lay.kappa = std::max(lay.kappa, lay.msg_digits[k] + lay.aux_digits[k]);
  }
  return lay;
}

Digits eta_embed(uint64_t m, uint64_t l, int user, const IndexLayout& layout,
                 const FiniteField& f) {
  Digits out(layout.kappa, 0);
  Digits dm = qary_expand(m, layout.msg_digits[user], f);
  Digits dl = qary_expand(l, layout.aux_digits[user], f);
  std::copy(dm.begin(), dm.end(), out.begin());
  std::copy(dl.begin(), dl.end(), out.begin() + layout.msg_digits[user]);
  return out;
}

int rank_over_field(const std::vector<Digits>& rows, const FiniteField& f) {
  if (rows.empty()) throw std::invalid_argument("rank of an empty matrix");
  std::vector<Digits> m = rows;
  const size_t ncols = m[0].size();
  for (const auto& r : m)
    if (r.size() != ncols) throw std::invalid_argument("ragged matrix");
  size_t rank = 0;
  for (size_t col = 0; col < ncols && rank < m.size(); ++col) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    int scale = f.inv(m[rank][col]);
    for (size_t c = col; c < ncols; ++c) m[rank][c] = f.mul(m[rank][c], scale);
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      int factor = m[r][col];
      for (size_t c = col; c < ncols; ++c)
        m[r][c] = f.sub(m[r][c], f.mul(factor, m[rank][c]));
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace cfkit
