#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dma/channel.hpp"
#include "dma/element.hpp"
#include "dma/params.hpp"

namespace dma {

inline constexpr std::size_t kDefaultResolution = 1001;
inline constexpr double kDefaultPhaseShifterLossDb = 8.8;

// Discrete candidate set for every slot's resonant frequency.
struct ResonanceGrid {
    std::vector<double> values;   // ascending; values.front() == f_r_min, values.back() == f_r_max

    std::size_t size() const { return values.size(); }
};

// R_res equally spaced points across the tuning range; R_res == 1 yields {f_t}.
ResonanceGrid resonance_grid(const DmaDesign &design, std::size_t R_res = kDefaultResolution);

enum class Algorithm { center_frequency, successive, phased_array };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

// Matches every slot independently to the conjugate channel phase at the centre subcarrier.
// Ties resolve to the lower resonant frequency.
ResonanceConfiguration center_frequency_beamformer(const ChannelSet &channels, const ResonanceGrid &grid,
                                                   const DmaDesign &design);

// f_r[n] = -(Gamma / 8 pi) phi_{n,c} + f_c with phi_{n,c} reduced to [-pi, pi).
// The result is not clipped to the tuning range.
ResonanceConfiguration center_frequency_tuning_closed_form(const ChannelSet &channels, const DmaDesign &design);

// Greedy feed-order selection. Slot n takes the candidate that maximizes
// (1/K) sum_k log2(1 + rho_k |U_n(f_k, f_r) + S_k|^2), where S_k sums the contributions
// of the slots already fixed. Ties resolve to the lower resonant frequency.
ResonanceConfiguration successive_beamformer(const ChannelSet &channels, std::span<const double> snr,
                                             const ResonanceGrid &grid, const DmaDesign &design);

// Objective of slot prefix.size() for every grid candidate, with slots 0..prefix.size()-1 fixed to prefix.
std::vector<double> successive_stage_objectives(const ChannelSet &channels, std::span<const double> snr,
                                                const ResonanceGrid &grid, const DmaDesign &design,
                                                std::span<const double> prefix);

// Conventional phase-shifter array steered at the centre subcarrier.
struct PhasedArrayWeights {
    CMatrix w;                  // K x N, identical rows conj(a_c) / sqrt(N)
    double snr_scale = 1.0;     // 10^(-loss_dB / 10)
};

PhasedArrayWeights phased_array_baseline(const ChannelSet &channels, double loss_dB = kDefaultPhaseShifterLossDb);

// Serial implementations kept as the ground truth for the parallel kernels above.
namespace reference {

ResonanceConfiguration center_frequency_beamformer(const ChannelSet &channels, const ResonanceGrid &grid,
                                                   const DmaDesign &design);

ResonanceConfiguration successive_beamformer(const ChannelSet &channels, std::span<const double> snr,
                                             const ResonanceGrid &grid, const DmaDesign &design);

} // namespace reference

// Columns n, f_r.
void write_configuration_csv(std::ostream &out, const ResonanceConfiguration &res);
ResonanceConfiguration read_configuration_csv(std::istream &in);

} // namespace dma
