#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dma/params.hpp"
#include "dma/types.hpp"

namespace dma {

// Per-subcarrier closed-form gain approximation and its three factors.
struct ApproxBreakdown {
    std::vector<double> frequencies;
    std::vector<double> F_freq;
    double W_fill = 0.0;
    double A_leak = 0.0;
    std::vector<double> product;   // F_freq[k] * W_fill * A_leak

    double sum() const;
};

// Squint phase of subcarrier f relative to the centre f_c:
// d_x [ (2 pi (f - f_c) / c) sin(phi) - (beta_g(f) - beta_g(f_c)) ],
// i.e. the per-slot channel phase step at f minus the one at f_c.
double chi_o(double f, double f_c, double phi, const DmaDesign &design);
double chi_o(std::size_t k, const ScenarioConfig &cfg, const DmaDesign &design);

// |(1/2)(1/sqrt(N)) sin(N chi/2) / sin(chi/2)|^2, N/4 when chi is a multiple of 2 pi.
double f_freq(double chi, std::size_t N_slot);
double f_freq(std::size_t k, const ScenarioConfig &cfg, const DmaDesign &design);

// Same quantity from the explicit N-term sum |(1/(2 sqrt N)) sum_n e^{j n chi}|^2.
double f_freq_sum(double chi, std::size_t N_slot);

// |arg abar(f_t, f_r_max) - arg abar(f_t, f_r_min)| / pi.
double weight_ratio(const DmaDesign &design);
// pi * weight_ratio.
double fill_angle(const DmaDesign &design);

// ((2 sin xi + 2 xi) / (2 pi))^2 for xi in [0, pi].
double w_fill(double xi);

// (4 / ln(1 - Lambda)) tanh(ln(1 - Lambda) / 4), the large-N leakage penalty.
double a_leak(double Lambda);

// Finite-aperture penalty |sum_n t_n|^2 / (N sum_n t_n^2) for the taper t_n = exp(-n d_x alpha).
double a_leak_exact(const DmaDesign &design);

ApproxBreakdown approx_breakdown(const ScenarioConfig &cfg, const DmaDesign &design);
double approx_gain(std::size_t k, const DmaDesign &design, const ScenarioConfig &cfg);

// (1/N) sum_n e^{j n phi_o} with phi_o the per-slot channel phase step at f.
cplx propagation_lobe(double phi_t, double f, const DmaDesign &design);
cplx propagation_lobe(double phi_o, std::size_t N_slot);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

// Monte-Carlo weight-fill factor: unit phasors with uniform phase, clipped to the nearest
// reachable phase within xi of the circle's far point, squared modulus of the average.
MonteCarloEstimate w_fill_oracle(double xi, std::size_t samples, std::uint64_t seed);

// Columns k, f_k, F_freq, W_fill, A_leak, product.
void write_breakdown_csv(std::ostream &out, const ApproxBreakdown &breakdown);

} // namespace dma
