#pragma once

#include <cstddef>
#include <vector>

#include "dma/types.hpp"

namespace dma {

// Link-level description of one experiment point. SI units throughout.
struct ScenarioConfig {
    double f_t = 15e9;                    // carrier frequency (Hz)
    double B = 500e6;                     // signal bandwidth (Hz)
    std::size_t K = 64;                   // subcarrier count (even)
    double phi_t = -20.0 * kPi / 180.0;   // steering angle from broadside (rad)
    double r = 100.0;                     // link distance (m)
    double P_in_tot = 1.0;                // total input power (W)
    double T_temp = 290.0;                // noise temperature (K)
    double G_dma = 1.0;                   // DMA efficiency loss (linear)
};

// Physical parameters of the waveguide-fed DMA.
struct DmaDesign {
    double f_t = 15e9;                    // design center frequency (Hz); anchors Q, tuning range and leakage
    std::size_t N_slot = 32;
    double d_x = kSpeedOfLight / 15e9 / 4.0;   // element spacing (m), lambda/4 at 15 GHz
    double Q = 100.0;                     // quality factor at f_t
    double B_tune = 2e9;                  // tuning bandwidth (Hz)
    double Lambda = 0.9;                  // fractional radiated power
    double eps_r = 2.1;                   // substrate permittivity factor
    double f_c10 = 10e9;                  // waveguide cutoff (Hz)
    double F_coupl = 1.0;                 // coupling factor; cancels in normalized weights

    // Damping factor Gamma = 2*pi*f_t/Q.
    double gamma() const { return 2.0 * kPi * f_t / Q; }
};

struct SubcarrierGrid {
    std::vector<double> frequencies;      // strictly increasing (Hz)
    std::size_t center_index = 0;         // 0-based position of f_{K/2}

    std::size_t size() const { return frequencies.size(); }
    double center() const { return frequencies.at(center_index); }

    // Arbitrary frequency list, e.g. single-tone evaluations with K = 1.
    static SubcarrierGrid from_frequencies(std::vector<double> frequencies, std::size_t center_index);
};

ScenarioConfig default_scenario();
DmaDesign default_design(double f_t = 15e9);

void validate(const ScenarioConfig &cfg);
void validate(const DmaDesign &design);

// f_k = f_t + B (k - K/2) / K for k = 1..K, so the (1-based) K/2-th entry is f_t exactly.
SubcarrierGrid subcarrier_grid(const ScenarioConfig &cfg);

// beta_g(f) = (2 pi eps_r / c) sqrt(f^2 - f_c10^2). Throws std::domain_error at or below cutoff.
double waveguide_beta(double f, const DmaDesign &design);

// Leakage constant that radiates the fraction Lambda by the last element:
// exp(-2 alpha d_x (N_slot - 1)) = 1 - Lambda. Positive (decaying taper).
double leakage_constant(const DmaDesign &design);

// leakage_constant for N_slot >= 2 and 0 for a single element, whose taper is just [1].
double taper_constant(const DmaDesign &design);

// 1 - exp(-2 alpha d_x (N_slot - 1)): power fraction radiated along the aperture.
// Equals Lambda for N_slot >= 2 and 0 for a single element.
double radiated_fraction(const DmaDesign &design);

// Free-space path gain (c / (4 pi r f))^2.
double path_loss(double f, double r);

// k_B T B / K.
double noise_power(const ScenarioConfig &cfg);

double per_subcarrier_power(const ScenarioConfig &cfg);

// beta_g(f_t) > 2 pi f_t / c: the guided wave is slower than free space, so the
// propagation lobe stays out of visible space.
bool is_slow_wave(const DmaDesign &design);

} // namespace dma
