#pragma once

#include <span>
#include <vector>

#include "dma/beamform.hpp"
#include "dma/channel.hpp"
#include "dma/params.hpp"

namespace dma {

struct GainSpectrum {
    std::vector<double> frequencies;
    std::vector<double> gain;   // linear beamforming gain per subcarrier
    std::vector<double> rho;    // linear SNR per subcarrier, before beamforming gain
    std::vector<double> se;     // log2(1 + rho * gain)
    double G_sum = 0.0;
    double C = 0.0;             // bits/s/Hz
    double D = 0.0;             // bits/s
};

// G_P(f_k) G_dma (P_in_tot / K) / sigma^2 at frequency f.
double snr(double f, const ScenarioConfig &cfg);
double snr(std::size_t k, const ScenarioConfig &cfg, const DmaDesign &design);
std::vector<double> snr_vector(const SubcarrierGrid &grid, const ScenarioConfig &cfg);

// P_in (1 - exp(-2 alpha d_x (N_slot - 1))).
double radiated_power(std::size_t k, const ScenarioConfig &cfg, const DmaDesign &design);

// Fraction the normalized weights must radiate: radiated_fraction for N_slot >= 2, Lambda for one slot.
double normalization_target(const DmaDesign &design);

// M_k = normalization_target / ||w (.) h_att||^2. Throws for a zero-norm product.
double normalization(std::span<const cplx> weights, std::span<const double> h_att, const DmaDesign &design);

// M_k |h[k]^T (w[k] (.) h_att[k])|^2; a zero weight row radiates nothing and yields 0.
double beamforming_gain(std::size_t k, const ChannelSet &channels, const CMatrix &weights, const DmaDesign &design);

// |h[k]^T (w[k] (.) h_att[k])|^2 / ||h_att[k]||^2: gain of an aperture fed with unit taper energy.
double taper_normalized_gain(std::size_t k, const ChannelSet &channels, const CMatrix &weights);

GainSpectrum evaluate(const ChannelSet &channels, const CMatrix &weights, const ScenarioConfig &cfg,
                      const DmaDesign &design);
GainSpectrum evaluate(const ChannelSet &channels, const ResonanceConfiguration &res, const ScenarioConfig &cfg,
                      const DmaDesign &design);

// Phased-array link: gain |a[k]^T w[k]|^2 on the wireless channel, SNR scaled by the shifter loss.
GainSpectrum evaluate_phased_array(const ChannelSet &channels, const PhasedArrayWeights &weights,
                                   const ScenarioConfig &cfg);

double spectral_efficiency(const ChannelSet &channels, const CMatrix &weights, const ScenarioConfig &cfg,
                           const DmaDesign &design);

double data_rate(const ScenarioConfig &cfg, double se);

// Runs the beamformer on the LOS channel of `cfg` and evaluates it.
GainSpectrum run_link(Algorithm algorithm, const ScenarioConfig &cfg, const DmaDesign &design,
                      std::size_t R_res = kDefaultResolution, double loss_dB = kDefaultPhaseShifterLossDb);
GainSpectrum run_link(Algorithm algorithm, const ChannelSet &channels, const ScenarioConfig &cfg,
                      const DmaDesign &design, std::size_t R_res = kDefaultResolution,
                      double loss_dB = kDefaultPhaseShifterLossDb);

struct MaxRateResult {
    std::vector<double> bandwidths;
    std::vector<double> rates;   // D per bandwidth
    std::size_t best = 0;
    double D_max = 0.0;
};

MaxRateResult max_data_rate(const DmaDesign &design, const ScenarioConfig &cfg_template,
                            std::span<const double> B_list, Algorithm algorithm = Algorithm::successive,
                            std::size_t R_res = kDefaultResolution);

} // namespace dma
