#pragma once

#include <map>
#include <string>
#include <vector>

#include "region.hpp"

namespace cfkit {

// Per-SNR sum-rate series of the symmetric Gaussian sum figure. All rates are
// max R1 + R2 over the corresponding achievable region; power P is linear.
double series_upper(double P);       // cut-set log2(1 + P)
double series_iid(double P);         // 1/2 log2(1 + 2P)
double series_cor1(double P);        // Gaussian-input compute-forward
double series_thm1_bpsk(double P);   // q = 2 antipodal, quantized output
double series_thm1_pam4(double P);   // q = 4 PAM, quantized output
double series_thm2_pam4(double P);   // integer PAM-4 via the translation field

struct TernaryPoint {
  double p = 0;     // optimized center mass
  double rate = 0;  // sum rate
};
TernaryPoint series_thm2_ternary(double P);

// Default 40-point SNR grids (dB) matching the embedded figure tables.
std::vector<double> fig4_snr_grid();
std::vector<double> fig5_snr_grid();

// filename -> file body; CSV values at 12 significant digits.
std::map<std::string, std::string> figure_fig4();
std::map<std::string, std::string> figure_fig5();
std::map<std::string, std::string> figure_fig7();

// Two-receiver example: per-receiver regions and their time-shared
// intersection, for the nested-linear and iid-Gaussian schemes.
struct Fig7Regions {
  RateRegion nested_rx1, nested_rx2, nested_combined;
  RateRegion iid_rx1, iid_rx2, iid_combined;
};
Fig7Regions fig7_regions(double p1 = 25.0, double p2 = 18.0,
                         double h = 1.4142135623730951);

// Quantized problem builders shared with the simulator and CLI.
CfProblem gaussian_field_problem(double P, int q, const std::vector<double>& xmap,
                                 const Pmf& pmf);
CfProblem gaussian_integer_problem(double P,
                                   const std::vector<int64_t>& labels,
                                   const std::vector<double>& xmap,
                                   const Pmf& pmf, int prime_q);

}  // namespace cfkit
