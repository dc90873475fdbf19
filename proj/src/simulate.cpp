#include "simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace cfkit {

// ---------------------------------------------------------------------------
// code construction
// ---------------------------------------------------------------------------

NestedLinearCode::NestedLinearCode(std::shared_ptr<const FiniteField> field,
                                   int n, IndexLayout layout, uint64_t seed)
    : field_(std::move(field)), n_(n), layout_(std::move(layout)), seed_(seed) {
  if (n_ < 1) throw std::invalid_argument("blocklength must be positive");
  const int q = field_->order();
  g_.assign(layout_.kappa, Digits(n_, 0));
  RngStream gs(seed_, {0x47ULL});
  for (auto& row : g_)
    for (int i = 0; i < n_; ++i) row[i] = static_cast<int>(gs.below(q));
  dither_.assign(layout_.users(), Digits(n_, 0));
  for (int k = 0; k < layout_.users(); ++k) {
    RngStream ds(seed_, {0xD1ULL, static_cast<uint64_t>(k)});
    for (int i = 0; i < n_; ++i) dither_[k][i] = static_cast<int>(ds.below(q));
  }
}

uint64_t NestedLinearCode::messages(int user) const {
  uint64_t v = 1;
  for (int i = 0; i < layout_.msg_digits[user]; ++i) v *= field_->order();
  return v;
}

uint64_t NestedLinearCode::aux_indices(int user) const {
  uint64_t v = 1;
  for (int i = 0; i < layout_.aux_digits[user]; ++i) v *= field_->order();
  return v;
}

double NestedLinearCode::rate(int user) const {
  return layout_.msg_digits[user] * std::log2(field_->order()) / n_;
}

double NestedLinearCode::aux_rate(int user) const {
  return layout_.aux_digits[user] * std::log2(field_->order()) / n_;
}

Digits NestedLinearCode::codeword(int user, uint64_t m, uint64_t l) const {
  Digits eta = eta_embed(m, l, user, layout_, *field_);
  Digits u = dither_[user];
  for (int r = 0; r < layout_.kappa; ++r) {
    int c = eta[r];
    if (c == 0) continue;
    const Digits& row = g_[r];
    for (int i = 0; i < n_; ++i)
      u[i] = field_->add(u[i], field_->mul(c, row[i]));
  }
  return u;
}

Digits NestedLinearCode::combination_index(const std::vector<int64_t>& a,
                                           const std::vector<uint64_t>& m,
                                           const std::vector<uint64_t>& l) const {
  const int users = layout_.users();
  if (a.size() != static_cast<size_t>(users) || m.size() != a.size() ||
      l.size() != a.size())
    throw std::invalid_argument("arity mismatch");
  Digits s(layout_.kappa, 0);
  for (int k = 0; k < users; ++k) {
    int64_t red = a[k] % field_->order();
    if (red < 0) red += field_->order();
    int c = static_cast<int>(red);
    if (c == 0) continue;
    Digits eta = eta_embed(m[k], l[k], k, layout_, *field_);
    for (int r = 0; r < layout_.kappa; ++r)
      s[r] = field_->add(s[r], field_->mul(c, eta[r]));
  }
  return s;
}

// ---------------------------------------------------------------------------
// encoding
// ---------------------------------------------------------------------------

namespace {

// Depth-first enumeration of one user's codewords with O(n) work per digit
// step: stepping digit r from label v-1 to v adds (v - (v-1)) * G_r.
template <typename Fn>
void for_each_codeword(const NestedLinearCode& code, int user,
                       std::optional<uint64_t> fixed_m, Fn&& fn) {
  const FiniteField& f = code.field();
  const int q = f.order();
  const int n = code.blocklength();
  const auto& lay = code.layout();
  const int t_msg = fixed_m ? 0 : lay.msg_digits[user];
  const int t_aux = lay.aux_digits[user];
  const int t = t_msg + t_aux;
  const int row0 = fixed_m ? lay.msg_digits[user] : 0;

  Digits u = code.dither(user);
  if (fixed_m) {
    Digits eta = eta_embed(*fixed_m, 0, user, lay, f);
    for (int r = 0; r < lay.msg_digits[user]; ++r) {
      if (eta[r] == 0) continue;
      const Digits& row = code.generator()[r];
      for (int i = 0; i < n; ++i) u[i] = f.add(u[i], f.mul(eta[r], row[i]));
    }
  }
  std::vector<int> digit(t, 0);
  uint64_t m_acc = fixed_m.value_or(0);

  std::function<void(int)> rec = [&](int pos) {
    if (pos == t) {
      uint64_t m = 0, l = 0;
      if (fixed_m) {
        m = *fixed_m;
        for (int i = 0; i < t_aux; ++i) l = l * q + digit[i];
      } else {
        for (int i = 0; i < t_msg; ++i) m = m * q + digit[i];
        for (int i = 0; i < t_aux; ++i) l = l * q + digit[t_msg + i];
      }
      fn(m, l, u);
      return;
    }
    const Digits& row = code.generator()[row0 + pos];
    rec(pos + 1);
    for (int v = 1; v < q; ++v) {
      int delta = f.sub(v, v - 1);
      for (int i = 0; i < n; ++i) u[i] = f.add(u[i], f.mul(delta, row[i]));
      digit[pos] = v;
      rec(pos + 1);
    }
    // undo the accumulated q-1 label
    int undo = f.neg(q - 1);
    for (int i = 0; i < n; ++i) u[i] = f.add(u[i], f.mul(undo, row[i]));
    digit[pos] = 0;
  };
  rec(0);
  (void)m_acc;
}

}  // namespace

EncodeResult encode_user(const NestedLinearCode& code, int user, uint64_t m,
                         const Pmf& target, double eps_prime, RngStream& rng) {
  const uint64_t nl = code.aux_indices(user);
  std::vector<uint64_t> typical;
  for_each_codeword(code, user, m, [&](uint64_t, uint64_t l, const Digits& u) {
    if (is_typical(u, target, eps_prime)) typical.push_back(l);
  });
  EncodeResult out;
  if (typical.empty()) {
    out.fallback = true;
    out.l = rng.below(nl);
  } else {
    out.l = typical[rng.below(typical.size())];
  }
  out.codeword = code.codeword(user, m, out.l);
  return out;
}

// ---------------------------------------------------------------------------
// decoding
// ---------------------------------------------------------------------------

namespace {

struct Candidate {
  uint64_t m = 0, l = 0;
  Digits u;
};

// Per-user candidate lists: marginally eps-typical codewords that also avoid
// every zero-probability (u_k, y) cell. Both screens are necessary
// conditions of joint typicality, so no survivor is lost.
std::vector<Candidate> user_candidates(const NestedLinearCode& code, int user,
                                       const Pmf& pmf,
                                       const std::vector<std::vector<bool>>& allowed,
                                       const std::vector<int>& y, double eps) {
  const int q = code.field().order();
  const int n = code.blocklength();
  std::vector<Candidate> out;
  std::vector<size_t> counts(q, 0);
  for_each_codeword(code, user, std::nullopt,
                    [&](uint64_t m, uint64_t l, const Digits& u) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) ++counts[u[i]];
    bool ok = true;
    for (int s = 0; s < q && ok; ++s) {
      double pi = static_cast<double>(counts[s]) / n;
      if (std::fabs(pi - pmf[s]) > eps * pmf[s]) ok = false;
    }
    for (int i = 0; i < n && ok; ++i)
      if (!allowed[u[i]][y[i]]) ok = false;
    if (ok) out.push_back({m, l, u});
  });
  return out;
}

std::vector<std::vector<bool>> allowed_table(const DiscreteMac& induced,
                                             const std::vector<Pmf>& pmfs,
                                             size_t user) {
  const size_t nu = induced.input_sizes()[user];
  const size_t ny = induced.output_size();
  std::vector<std::vector<bool>> allowed(nu, std::vector<bool>(ny, false));
  const size_t combos = induced.input_combos();
  for (size_t flat = 0; flat < combos; ++flat) {
    auto u = induced.unflatten(flat);
    double w = 1.0;
    for (size_t k = 0; k < pmfs.size(); ++k) w *= pmfs[k][u[k]];
    if (w == 0) continue;
    const double* row = induced.cond().data() + flat * ny;
    for (size_t y = 0; y < ny; ++y)
      if (row[y] > 0) allowed[u[user]][y] = true;
  }
  return allowed;
}

uint64_t layout_hypotheses(const IndexLayout& layout, int q) {
  long double total = 1;
  for (int k = 0; k < layout.users(); ++k)
    total *= std::pow(static_cast<long double>(q),
                      layout.msg_digits[k] + layout.aux_digits[k]);
  return total > 1e18L ? UINT64_MAX : static_cast<uint64_t>(total);
}

uint64_t hypothesis_count(const NestedLinearCode& code) {
  return layout_hypotheses(code.layout(), code.field().order());
}

}  // namespace

DecodeOutcome decode_single(const NestedLinearCode& code,
                            const std::vector<Pmf>& pmfs,
                            const DiscreteMac& induced,
                            const std::vector<int>& y,
                            const std::vector<int64_t>& a, double eps,
                            uint64_t budget) {
  if (code.layout().users() != 2)
    throw std::invalid_argument("single-combination decoder expects K = 2");
  if (hypothesis_count(code) > budget)
    throw std::runtime_error("decoder hypothesis budget exceeded");
  const int n = code.blocklength();
  const size_t q1 = induced.input_sizes()[0], q2 = induced.input_sizes()[1];
  const size_t ny = induced.output_size();

  // target joint p(u1, u2, y)
  std::vector<double> target(q1 * q2 * ny);
  for (size_t u1 = 0; u1 < q1; ++u1)
    for (size_t u2 = 0; u2 < q2; ++u2) {
      const double* row = induced.slice({u1, u2});
      for (size_t yy = 0; yy < ny; ++yy)
        target[(u1 * q2 + u2) * ny + yy] = pmfs[0][u1] * pmfs[1][u2] * row[yy];
    }

  auto cands1 = user_candidates(code, 0, pmfs[0], allowed_table(induced, pmfs, 0), y, eps);
  auto cands2 = user_candidates(code, 1, pmfs[1], allowed_table(induced, pmfs, 1), y, eps);

  std::set<Digits> survivors;
  std::vector<size_t> counts(q1 * q2 * ny);
  for (const auto& c1 : cands1) {
    for (const auto& c2 : cands2) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int i = 0; i < n; ++i)
        ++counts[(static_cast<size_t>(c1.u[i]) * q2 + c2.u[i]) * ny + y[i]];
      bool ok = true;
      for (size_t cell = 0; cell < counts.size() && ok; ++cell) {
        double pi = static_cast<double>(counts[cell]) / n;
        if (std::fabs(pi - target[cell]) > eps * target[cell]) ok = false;
      }
      if (!ok) continue;
      survivors.insert(
          code.combination_index(a, {c1.m, c2.m}, {c1.l, c2.l}));
      if (survivors.size() > 1) {
        DecodeOutcome out;
        out.kind = DecodeOutcome::Kind::Ambiguous;
        return out;
      }
    }
  }
  DecodeOutcome out;
  if (survivors.empty()) {
    out.kind = DecodeOutcome::Kind::NoCandidate;
  } else {
    out.kind = DecodeOutcome::Kind::Decoded;
    out.s = *survivors.begin();
  }
  return out;
}

PairOutcome decode_pair(const NestedLinearCode& code,
                        const std::vector<Pmf>& pmfs,
                        const DiscreteMac& induced, const std::vector<int>& y,
                        const std::vector<int64_t>& a1,
                        const std::vector<int64_t>& a2, double eps,
                        uint64_t budget) {
  const int users = code.layout().users();
  if (users != 2)
    throw std::invalid_argument("pair decoder implemented for K = 2");
  const auto& f = code.field();
  {
    Digits r1, r2;
    for (int64_t c : a1) r1.push_back(static_cast<int>(((c % f.order()) + f.order()) % f.order()));
    for (int64_t c : a2) r2.push_back(static_cast<int>(((c % f.order()) + f.order()) % f.order()));
    if (rank_over_field({r1, r2}, f) < 2)
      throw std::invalid_argument("pair decoding needs linearly independent coefficients");
  }
  if (hypothesis_count(code) > budget)
    throw std::runtime_error("decoder hypothesis budget exceeded");
  const int n = code.blocklength();
  const size_t q1 = induced.input_sizes()[0], q2 = induced.input_sizes()[1];
  const size_t ny = induced.output_size();

  // With invertible coefficients, (w1, w2, y) typicality under the
  // pushforward law is the (u1, u2, y) test in disguise.
  std::vector<double> target(q1 * q2 * ny);
  for (size_t u1 = 0; u1 < q1; ++u1)
    for (size_t u2 = 0; u2 < q2; ++u2) {
      const double* row = induced.slice({u1, u2});
      for (size_t yy = 0; yy < ny; ++yy)
        target[(u1 * q2 + u2) * ny + yy] = pmfs[0][u1] * pmfs[1][u2] * row[yy];
    }
  auto cands1 = user_candidates(code, 0, pmfs[0], allowed_table(induced, pmfs, 0), y, eps);
  auto cands2 = user_candidates(code, 1, pmfs[1], allowed_table(induced, pmfs, 1), y, eps);

  std::set<std::pair<Digits, Digits>> survivors;
  std::vector<size_t> counts(q1 * q2 * ny);
  for (const auto& c1 : cands1)
    for (const auto& c2 : cands2) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int i = 0; i < n; ++i)
        ++counts[(static_cast<size_t>(c1.u[i]) * q2 + c2.u[i]) * ny + y[i]];
      bool ok = true;
      for (size_t cell = 0; cell < counts.size() && ok; ++cell) {
        double pi = static_cast<double>(counts[cell]) / n;
        if (std::fabs(pi - target[cell]) > eps * target[cell]) ok = false;
      }
      if (!ok) continue;
      survivors.insert({code.combination_index(a1, {c1.m, c2.m}, {c1.l, c2.l}),
                        code.combination_index(a2, {c1.m, c2.m}, {c1.l, c2.l})});
      if (survivors.size() > 1) {
        PairOutcome out;
        out.kind = DecodeOutcome::Kind::Ambiguous;
        return out;
      }
    }
  PairOutcome out;
  if (survivors.empty()) {
    out.kind = DecodeOutcome::Kind::NoCandidate;
  } else {
    out.kind = DecodeOutcome::Kind::Decoded;
    out.s1 = survivors.begin()->first;
    out.s2 = survivors.begin()->second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo campaign
// ---------------------------------------------------------------------------

namespace {

int snap_digits(double rate_bits, int n, int q) {
  double digits = rate_bits * n / std::log2(q);
  return std::max(0, static_cast<int>(std::llround(digits)));
}

}  // namespace

SimReport simulate_point(const SimConfig& cfg) {
  if (cfg.channel.users() != cfg.pmfs.size())
    throw std::invalid_argument("per-user pmfs required");
  const size_t users = cfg.pmfs.size();
  auto field = std::make_shared<const FiniteField>(cfg.q);

  std::vector<int> msg_digits, aux_digits;
  SimReport report;
  for (size_t k = 0; k < users; ++k) {
    msg_digits.push_back(snap_digits(cfg.rates.at(k), cfg.n, cfg.q));
    double aux;
    if (cfg.aux_rates.empty()) {
      // paper threshold plus a fixed 0.1-bit margin standing in for 2 delta
      aux = kl_divergence(cfg.pmfs[k], Pmf::uniform(cfg.q)) + 0.1;
    } else {
      aux = cfg.aux_rates.at(k);
    }
    aux_digits.push_back(snap_digits(aux, cfg.n, cfg.q));
    report.snapped_rates.push_back(msg_digits.back() * std::log2(cfg.q) / cfg.n);
    report.snapped_aux_rates.push_back(aux_digits.back() * std::log2(cfg.q) / cfg.n);
  }
  IndexLayout layout = IndexLayout::make(msg_digits, aux_digits);

  if (layout_hypotheses(layout, cfg.q) >
      (1ULL << static_cast<int>(cfg.budget_log2)))
    throw std::runtime_error("decoder hypothesis budget exceeded");

  std::vector<uint8_t> err(cfg.trials, 0), fallback(cfg.trials, 0),
      none(cfg.trials, 0), ambig(cfg.trials, 0);

  parallel_for(cfg.trials, [&](size_t t) {
    NestedLinearCode code(field, cfg.n, layout,
                          split_seed(cfg.seed, {0xC0DEULL, t}));
    std::vector<uint64_t> m(users), l(users);
    std::vector<Digits> u(users);
    bool any_fallback = false;
    for (size_t k = 0; k < users; ++k) {
      RngStream mstream(cfg.seed, {0x3E55ULL, t, k});
      m[k] = mstream.below(code.messages(k));
      RngStream estream(cfg.seed, {0xE2CULL, t, k, m[k]});
      EncodeResult enc = encode_user(code, static_cast<int>(k), m[k],
                                     cfg.pmfs[k], cfg.eps_prime, estream);
      l[k] = enc.l;
      u[k] = std::move(enc.codeword);
      any_fallback = any_fallback || enc.fallback;
    }
    RngStream cstream(cfg.seed, {0xCAFEULL, t});
    std::vector<int> y(cfg.n);
    for (int i = 0; i < cfg.n; ++i) {
      std::vector<size_t> x(users);
      for (size_t k = 0; k < users; ++k) x[k] = static_cast<size_t>(u[k][i]);
      y[i] = cfg.channel.sample(x, cstream);
    }
    bool error = false;
    const uint64_t budget = 1ULL << static_cast<int>(cfg.budget_log2);
    if (cfg.a2) {
      Digits s1 = code.combination_index(cfg.a, m, l);
      Digits s2 = code.combination_index(*cfg.a2, m, l);
      PairOutcome out =
          decode_pair(code, cfg.pmfs, cfg.channel, y, cfg.a, *cfg.a2, cfg.eps, budget);
      if (out.kind != DecodeOutcome::Kind::Decoded) {
        error = true;
        if (out.kind == DecodeOutcome::Kind::NoCandidate) none[t] = 1;
        if (out.kind == DecodeOutcome::Kind::Ambiguous) ambig[t] = 1;
      } else {
        error = out.s1 != s1 || out.s2 != s2;
      }
    } else {
      Digits s = code.combination_index(cfg.a, m, l);
      DecodeOutcome out =
          decode_single(code, cfg.pmfs, cfg.channel, y, cfg.a, cfg.eps, budget);
      if (out.kind != DecodeOutcome::Kind::Decoded) {
        error = true;
        if (out.kind == DecodeOutcome::Kind::NoCandidate) none[t] = 1;
        if (out.kind == DecodeOutcome::Kind::Ambiguous) ambig[t] = 1;
      } else {
        error = out.s != s;
      }
    }
    err[t] = error ? 1 : 0;
    fallback[t] = any_fallback ? 1 : 0;
  });

  report.trials = cfg.trials;
  for (size_t t = 0; t < cfg.trials; ++t) {
    report.errors += err[t];
    report.encode_fallbacks += fallback[t];
    report.none += none[t];
    report.ambiguous += ambig[t];
  }
  report.error_rate = static_cast<double>(report.errors) / cfg.trials;
  wilson_interval(report.errors, report.trials, &report.wilson_lo,
                  &report.wilson_hi);
  return report;
}

// ---------------------------------------------------------------------------
// statistics
// ---------------------------------------------------------------------------

void wilson_interval(size_t errors, size_t trials, double* lo, double* hi) {
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double denom = 1.0 + z * z / n;
  const double center = p + z * z / (2 * n);
  const double spread = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  *lo = std::max(0.0, (center - spread) / denom);
  *hi = std::min(1.0, (center + spread) / denom);
}

namespace {

double gammln(double x) {
  static const double cof[6] = {76.18009172947146,  -86.50532032941677,
                                24.01409824083091,  -1.231739572450155,
                                0.1208650973866179e-2, -0.5395239384953e-5};
  double y = x, tmp = x + 5.5;
  tmp -= (x + 0.5) * std::log(tmp);
  double ser = 1.000000000190015;
  for (int j = 0; j < 6; ++j) ser += cof[j] / ++y;
  return -tmp + std::log(2.5066282746310005 * ser / x);
}

// regularized upper incomplete gamma Q(a, x)
double gammq(double a, double x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gammq domain");
  if (x == 0) return 1.0;
  if (x < a + 1.0) {
    // series for P(a, x)
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ++ap;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - gammln(a));
  }
  // continued fraction for Q(a, x)
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gammln(a)) * h;
}

ChiSquareReport chi_report(const std::string& name,
                           const std::vector<uint64_t>& counts,
                           const std::vector<double>& expected) {
  ChiSquareReport rep;
  rep.name = name;
  double stat = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    double e = expected[i];
    double d = counts[i] - e;
    stat += d * d / e;
  }
  rep.statistic = stat;
  rep.dof = static_cast<double>(counts.size() - 1);
  rep.p_value = chi_square_pvalue(rep.statistic, rep.dof);
  rep.pass = rep.p_value > 0.01;
  return rep;
}

}  // namespace

double chi_square_pvalue(double statistic, double dof) {
  return gammq(dof / 2.0, statistic / 2.0);
}

ChiSquareReport check_uniformity(int q, int n, int digits, size_t samples,
                                 uint64_t seed) {
  auto field = std::make_shared<const FiniteField>(q);
  IndexLayout layout = IndexLayout::make({0}, {digits});
  size_t cells = 1;
  for (int i = 0; i < n; ++i) cells *= q;
  std::vector<uint64_t> counts(cells, 0);
  for (size_t s = 0; s < samples; ++s) {
    NestedLinearCode code(field, n, layout, split_seed(seed, {1, s}));
    Digits u = code.codeword(0, 0, 1 % code.aux_indices(0));
    size_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * q + u[i];
    ++counts[idx];
  }
  std::vector<double> expected(cells, static_cast<double>(samples) / cells);
  return chi_report("uniformity", counts, expected);
}

ChiSquareReport check_pairwise_independence(int q, int n, int digits,
                                            size_t samples, uint64_t seed) {
  auto field = std::make_shared<const FiniteField>(q);
  IndexLayout layout = IndexLayout::make({0}, {digits});
  size_t cells = 1;
  for (int i = 0; i < 2 * n; ++i) cells *= q;
  std::vector<uint64_t> counts(cells, 0);
  for (size_t s = 0; s < samples; ++s) {
    NestedLinearCode code(field, n, layout, split_seed(seed, {2, s}));
    Digits u1 = code.codeword(0, 0, 0);
    Digits u2 = code.codeword(0, 0, 1);
    size_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * q + u1[i];
    for (int i = 0; i < n; ++i) idx = idx * q + u2[i];
    ++counts[idx];
  }
  std::vector<double> expected(cells, static_cast<double>(samples) / cells);
  return chi_report("pairwise_independence", counts, expected);
}

ChiSquareReport check_fullrank_independence(int q, int n, int digits,
                                            size_t samples, uint64_t seed) {
  auto field = std::make_shared<const FiniteField>(q);
  IndexLayout layout = IndexLayout::make({0, 0}, {digits, digits});
  // indices (l1, l2, l1~) with eta's {00.., 01.., 10..} -> rank K + 1 = 3
  size_t cells = 1;
  for (int i = 0; i < 3 * n; ++i) cells *= q;
  std::vector<uint64_t> counts(cells, 0);
  uint64_t l2 = 1;                      // eta = [0 ... 0 1]
  uint64_t l1_alt = 1;
  for (int i = 1; i < digits; ++i) l1_alt *= q;  // eta = [1 0 ... 0]
  for (size_t s = 0; s < samples; ++s) {
    NestedLinearCode code(field, n, layout, split_seed(seed, {3, s}));
    Digits a = code.codeword(0, 0, 0);
    Digits b = code.codeword(1, 0, l2);
    Digits c = code.codeword(0, 0, l1_alt);
    size_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * q + a[i];
    for (int i = 0; i < n; ++i) idx = idx * q + b[i];
    for (int i = 0; i < n; ++i) idx = idx * q + c[i];
    ++counts[idx];
  }
  std::vector<double> expected(cells, static_cast<double>(samples) / cells);
  return chi_report("fullrank_independence", counts, expected);
}

ChiSquareReport check_index_uniformity(int q, int n, int msg_digits,
                                       int aux_digits, const Pmf& target,
                                       double eps_prime, size_t samples,
                                       uint64_t seed) {
  auto field = std::make_shared<const FiniteField>(q);
  IndexLayout layout = IndexLayout::make({msg_digits}, {aux_digits});
  uint64_t nm = 1, nl = 1;
  for (int i = 0; i < msg_digits; ++i) nm *= q;
  for (int i = 0; i < aux_digits; ++i) nl *= q;
  std::vector<uint64_t> counts(nm * nl, 0);
  for (size_t s = 0; s < samples; ++s) {
    NestedLinearCode code(field, n, layout, split_seed(seed, {4, s}));
    RngStream ms(seed, {5, s});
    uint64_t m = ms.below(nm);
    RngStream es(seed, {6, s});
    EncodeResult enc = encode_user(code, 0, m, target, eps_prime, es);
    ++counts[m * nl + enc.l];
  }
  std::vector<double> expected(counts.size(),
                               static_cast<double>(samples) / counts.size());
  return chi_report("index_uniformity", counts, expected);
}

IndexSetReport check_index_set_counts(int q, int digits1, int digits2) {
  FiniteField f(q);
  IndexLayout layout = IndexLayout::make({0, 0}, {digits1, digits2});
  const int K = 2;
  uint64_t space1 = 1, space2 = 1;  // q^{n_1}, q^{n_2}
  for (int i = 0; i < digits1; ++i) space1 *= q;
  for (int i = 0; i < digits2; ++i) space2 *= q;

  IndexSetReport rep;
  rep.counts.assign(K + 1, 0);  // ranks K .. 2K
  for (uint64_t l1 = 0; l1 < space1; ++l1)
    for (uint64_t l2 = 0; l2 < space2; ++l2)
      for (uint64_t t1 = 0; t1 < space1; ++t1)
        for (uint64_t t2 = 0; t2 < space2; ++t2) {
          auto row = [&](int user, uint64_t l) {
            Digits r(K, 0);
            r[user] = 1;
            Digits eta = eta_embed(0, l, user, layout, f);
            r.insert(r.end(), eta.begin(), eta.end());
            return r;
          };
          int rank = rank_over_field(
              {row(0, l1), row(1, l2), row(0, t1), row(1, t2)}, f);
          ++rep.counts[rank - K];
        }
  // |I_K| = q^{n_1 + n_2} exactly; |I_{K+1}| <= q^{n_1 + n_2} q^{K^2}
  // (q^{n_1} + q^{n_2}); |I_{2K}| <= q^{2(n_1 + n_2)}.
  uint64_t base = space1 * space2;
  uint64_t qk2 = 1;
  for (int i = 0; i < K * K; ++i) qk2 *= q;
  rep.bounds = {base, base * qk2 * (space1 + space2), base * base};
  rep.pass = rep.counts[0] == base && rep.counts[1] <= rep.bounds[1] &&
             rep.counts[2] <= rep.bounds[2] &&
             rep.counts[0] + rep.counts[1] + rep.counts[2] == base * base;
  return rep;
}

ExponentReport check_mismatched_exponent(double px1, double flip, double eps,
                                         int n, size_t samples, double tol,
                                         uint64_t seed) {
  // joint p(x, y) with Y = X xor Z, Z ~ Bern(flip)
  std::vector<double> joint = {(1 - px1) * (1 - flip), (1 - px1) * flip,
                               px1 * flip, px1 * (1 - flip)};  // (x, y) cells
  JointPmf xy({2, 2}, joint);
  ExponentReport rep;
  rep.target = mismatched_exponent(xy, Pmf::uniform(2));

  double py1 = joint[1] + joint[3];
  int n1 = static_cast<int>(std::llround(py1 * n));
  std::vector<int> y(n, 0);
  for (int i = 0; i < n1; ++i) y[i] = 1;

  std::vector<double> cell_p = {joint[0], joint[1], joint[2], joint[3]};
  RngStream rng(seed, {7});
  size_t hits = 0;
  std::array<int, 4> counts{};
  for (size_t s = 0; s < samples; ++s) {
    counts = {0, 0, 0, 0};
    for (int i = 0; i < n; ++i) {
      int x = static_cast<int>(rng.next_u64() & 1);
      ++counts[x * 2 + y[i]];
    }
    bool ok = true;
    for (int c = 0; c < 4 && ok; ++c) {
      double pi = static_cast<double>(counts[c]) / n;
      if (std::fabs(pi - cell_p[c]) > eps * cell_p[c]) ok = false;
    }
    if (ok) ++hits;
  }
  rep.hits = hits;
  rep.samples = samples;
  rep.empirical = hits == 0 ? kInfBits
                            : -std::log2(static_cast<double>(hits) / samples) / n;
  rep.pass = std::fabs(rep.empirical - rep.target) <= tol;
  return rep;
}

}  // namespace cfkit
