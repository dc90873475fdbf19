#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "channel.hpp"
#include "region.hpp"

namespace cfkit {

// One-parameter input families used by the examples and figures.
enum class PmfFamily { Bern, Ternary, Uniform };

enum class Objective {
  CfSymmetric,         // sup t with (t, t) in R_CF u R_LMAC
  ClassicalMacSymmetric,
  CfSumRate,
};

struct SearchSpec {
  PmfFamily family = PmfFamily::Bern;
  Objective objective = Objective::CfSymmetric;
  std::vector<int64_t> a{1, 1};
  int q = 2;              // field order for the theorem-1 evaluation
  double grid_step = 1e-3;
  int refine_iters = 60;
};

struct OptResult {
  double param = 0;  // family parameter (ignored for Uniform)
  double value = 0;
};

// Grid search plus golden-section refinement around the best cell; the
// refined value never falls below the best grid value.
OptResult optimize_symmetric_rate(const DiscreteMac& channel,
                                  const SearchSpec& spec);

// Scalar objective evaluation used by both the optimizer and tests.
double evaluate_objective(const DiscreteMac& channel, const SearchSpec& spec,
                          double param);

// Exhaustive argmax of min(icf1, icf2) over canonicalized coefficient
// candidates (first nonzero positive, gcd-reduced); ties break to the
// lexicographically largest canonical vector.
struct CoeffSearchResult {
  std::vector<int64_t> a;
  double objective = 0;
};
CoeffSearchResult best_coefficients(
    const std::function<IcfPair(const std::vector<int64_t>&)>& icf_of,
    std::vector<std::vector<int64_t>> candidates);

// Generic golden-section maximizer on [lo, hi] (unimodal refinement step).
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  int iters, double* arg_out = nullptr);

}  // namespace cfkit
