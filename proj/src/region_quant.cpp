#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "region.hpp"

namespace cfkit {

namespace {

double xlog2x(double p) { return p > 0 ? p * std::log2(p) : 0.0; }
double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// pmf of [U]_delta on the lattice k * delta, k in [-kmax, kmax]; mass beyond
// the 1e-18 tail is negligible for every supported pdf.
struct LatticePmf {
  long long kmin = 0;
  std::vector<double> p;
};

LatticePmf lattice_pmf(const PdfSpec& u, double delta) {
  LatticePmf out;
  auto cdf = [&](double x) -> double {
    switch (u.kind) {
      case PdfSpec::Kind::Gaussian:
        return std_normal_cdf(x / std::sqrt(u.variance));
      case PdfSpec::Kind::Uniform:
        if (x <= u.lo) return 0.0;
        if (x >= u.hi) return 1.0;
        return (x - u.lo) / (u.hi - u.lo);
      case PdfSpec::Kind::TruncGaussian: {
        double s = std::sqrt(u.variance);
        double lo = std_normal_cdf(-u.tau / s), hi = std_normal_cdf(u.tau / s);
        double xx = std::clamp(x, -u.tau, u.tau);
        return (std_normal_cdf(xx / s) - lo) / (hi - lo);
      }
    }
    return 0.0;
  };
  double span;
  switch (u.kind) {
    case PdfSpec::Kind::Gaussian:
      span = 9.2 * std::sqrt(u.variance);  // ~1e-19 tail
      break;
    case PdfSpec::Kind::Uniform:
      span = std::max(std::fabs(u.lo), std::fabs(u.hi));
      break;
    case PdfSpec::Kind::TruncGaussian:
      span = u.tau;
      break;
    default:
      span = 1.0;
  }
  long long kmax = static_cast<long long>(std::ceil(span / delta)) + 1;
  out.kmin = -kmax;
  out.p.resize(2 * kmax + 1);
  double prev = cdf((static_cast<double>(-kmax) - 0.5) * delta);
  for (long long k = -kmax; k <= kmax; ++k) {
    double hi = cdf((static_cast<double>(k) + 0.5) * delta);
    out.p[k + kmax] = std::max(0.0, hi - prev);
    prev = hi;
  }
  double total = 0;
  for (double v : out.p) total += v;
  for (double& v : out.p) v /= total;
  return out;
}

// unit-variance noise quantized onto the same lattice
std::vector<double> noise_kernel(double delta) {
  long long kmax = static_cast<long long>(std::ceil(9.2 / delta)) + 1;
  std::vector<double> g(2 * kmax + 1);
  double prev = std_normal_cdf((static_cast<double>(-kmax) - 0.5) * delta);
  for (long long k = -kmax; k <= kmax; ++k) {
    double hi = std_normal_cdf((static_cast<double>(k) + 0.5) * delta);
    g[k + kmax] = std::max(0.0, hi - prev);
    prev = hi;
  }
  double total = 0;
  for (double v : g) total += v;
  for (double& v : g) v /= total;
  return g;
}

double entropy_vec(const std::vector<double>& p) {
  double h = 0;
  for (double v : p) h -= xlog2x(v);
  return h;
}

}  // namespace

PdfSpec PdfSpec::gaussian(double var) {
  if (!(var > 0)) throw std::invalid_argument("variance must be positive");
  PdfSpec s;
  s.kind = Kind::Gaussian;
  s.variance = var;
  return s;
}

PdfSpec PdfSpec::uniform(double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("empty uniform support");
  PdfSpec s;
  s.kind = Kind::Uniform;
  s.lo = lo;
  s.hi = hi;
  return s;
}

PdfSpec PdfSpec::trunc_gaussian(double var, double tau) {
  if (!(var > 0) || !(tau > 0)) throw std::invalid_argument("bad truncation");
  PdfSpec s;
  s.kind = Kind::TruncGaussian;
  s.variance = var;
  s.tau = tau;
  return s;
}

double quantized_entropy(const PdfSpec& u, double delta) {
  return entropy_vec(lattice_pmf(u, delta).p);
}

QuantLimitReport region_thm3_limit(const PdfSpec& u1, const PdfSpec& u2,
                                   const std::vector<int64_t>& a,
                                   const std::vector<double>& deltas) {
  if (a.size() != 2 || (a[0] == 0 && a[1] == 0))
    throw std::invalid_argument("need a nonzero integer pair");
  std::vector<double> sched = deltas;
  if (sched.empty()) sched = {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};

  QuantLimitReport rep;
  for (double delta : sched) {
    LatticePmf p1 = lattice_pmf(u1, delta);
    LatticePmf p2 = lattice_pmf(u2, delta);
    std::vector<double> g = noise_kernel(delta);
    const long long gmin = -(static_cast<long long>(g.size()) - 1) / 2;

    // S = [U1] + [U2] (the channel input sum); p_Y = p_S * g
    std::vector<double> ps(p1.p.size() + p2.p.size() - 1, 0.0);
    for (size_t i = 0; i < p1.p.size(); ++i) {
      if (p1.p[i] == 0) continue;
      for (size_t j = 0; j < p2.p.size(); ++j) ps[i + j] += p1.p[i] * p2.p[j];
    }
    std::vector<double> py(ps.size() + g.size() - 1, 0.0);
    for (size_t i = 0; i < ps.size(); ++i) {
      if (ps[i] == 0) continue;
      for (size_t j = 0; j < g.size(); ++j) py[i + j] += ps[i] * g[j];
    }
    double hy = entropy_vec(py);

    // H(W, Yq): group (k1, k2) pairs by w = a1 k1 + a2 k2, accumulate the
    // conditional s-row, then spread through the noise kernel once per w.
    int64_t wmin = 0, wmax = 0;
    auto scan = [&](int64_t k1lo, int64_t k1hi, int64_t k2lo, int64_t k2hi) {
      int64_t c[4][2] = {{k1lo, k2lo}, {k1lo, k2hi}, {k1hi, k2lo}, {k1hi, k2hi}};
      for (auto& pt : c) {
        int64_t w = a[0] * pt[0] + a[1] * pt[1];
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
      }
    };
    int64_t k1lo = p1.kmin, k1hi = p1.kmin + static_cast<int64_t>(p1.p.size()) - 1;
    int64_t k2lo = p2.kmin, k2hi = p2.kmin + static_cast<int64_t>(p2.p.size()) - 1;
    scan(k1lo, k1hi, k2lo, k2hi);

    double h_wy = 0;
    std::vector<double> srow, yrow;
    for (int64_t w = wmin; w <= wmax; ++w) {
      // collect p(s, w) over user-2 indices with a1 k1 = w - a2 k2
      int64_t smin = k1lo + k2lo;
      srow.assign(static_cast<size_t>(k1hi + k2hi - smin + 1), 0.0);
      bool any = false;
      for (int64_t k2 = k2lo; k2 <= k2hi; ++k2) {
        double q2 = p2.p[static_cast<size_t>(k2 - k2lo)];
        if (q2 == 0) continue;
        int64_t rem = w - a[1] * k2;
        if (a[0] == 0) {
          if (rem != 0) continue;
          for (int64_t k1 = k1lo; k1 <= k1hi; ++k1) {
            double q1 = p1.p[static_cast<size_t>(k1 - k1lo)];
            if (q1 == 0) continue;
            srow[static_cast<size_t>(k1 + k2 - smin)] += q1 * q2;
            any = true;
          }
          continue;
        }
        if (rem % a[0] != 0) continue;
        int64_t k1 = rem / a[0];
        if (k1 < k1lo || k1 > k1hi) continue;
        double q1 = p1.p[static_cast<size_t>(k1 - k1lo)];
        if (q1 == 0) continue;
        srow[static_cast<size_t>(k1 + k2 - smin)] += q1 * q2;
        any = true;
      }
      if (!any) continue;
      yrow.assign(srow.size() + g.size() - 1, 0.0);
      for (size_t i = 0; i < srow.size(); ++i) {
        if (srow[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) yrow[i + j] += srow[i] * g[j];
      }
      h_wy += entropy_vec(yrow);
    }
    (void)gmin;
    double h_w_given_y = h_wy - hy;

    QuantLimitStep step;
    step.delta = delta;
    double h1 = entropy_vec(p1.p), h2 = entropy_vec(p2.p);
    step.h_u1 = h1 + std::log2(delta);
    step.h_u2 = h2 + std::log2(delta);
    step.icf1 = h1 - h_w_given_y;
    step.icf2 = h2 - h_w_given_y;
    rep.steps.push_back(step);
  }

  // Richardson extrapolation assuming an O(delta^2) tail on a halving
  // schedule; with fewer than two steps, report the last value.
  const auto& last = rep.steps.back();
  if (rep.steps.size() >= 2) {
    const auto& prev = rep.steps[rep.steps.size() - 2];
    rep.icf1 = last.icf1 + (last.icf1 - prev.icf1) / 3.0;
    rep.icf2 = last.icf2 + (last.icf2 - prev.icf2) / 3.0;
    for (size_t i = 2; i < rep.steps.size(); ++i) {
      double d_prev = std::fabs(rep.steps[i - 1].icf1 - rep.steps[i - 2].icf1);
      double d_cur = std::fabs(rep.steps[i].icf1 - rep.steps[i - 1].icf1);
      if (d_cur > d_prev + 1e-9) rep.converged = false;
    }
  } else {
    rep.icf1 = last.icf1;
    rep.icf2 = last.icf2;
  }
  return rep;
}

}  // namespace cfkit
