#include "dma/metrics.hpp"

#include <cmath>

namespace dma {

namespace {

struct Projection {
    cplx inner{0.0, 0.0};   // h^T (w (.) h_att)
    double weight_energy = 0.0;
    double taper_energy = 0.0;
};

Projection project(std::size_t k, const ChannelSet &channels, const CMatrix &weights)
{
    Projection p;
    for (std::size_t n = 0; n < channels.elements(); ++n) {
        const double t = channels.h_att(k, n);
        const cplx v = weights(k, n) * t;
        p.inner += channels.h(k, n) * v;
        p.weight_energy += std::norm(v);
        p.taper_energy += t * t;
    }
    return p;
}

void check_shapes(const ChannelSet &channels, const CMatrix &weights)
{
    require(weights.rows() == channels.subcarriers() && weights.cols() == channels.elements(),
            "weights must be K x N_slot matching the channel set");
}

void finish(GainSpectrum &spectrum, const ScenarioConfig &cfg)
{
    const std::size_t K = spectrum.gain.size();
    spectrum.G_sum = 0.0;
    double se_sum = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        spectrum.G_sum += spectrum.gain[k];
        se_sum += spectrum.se[k];
    }
    spectrum.C = K ? se_sum / static_cast<double>(K) : 0.0;
    spectrum.D = data_rate(cfg, spectrum.C);
}

} // namespace

double snr(double f, const ScenarioConfig &cfg)
{
    return path_loss(f, cfg.r) * cfg.G_dma * per_subcarrier_power(cfg) / noise_power(cfg);
}

double snr(std::size_t k, const ScenarioConfig &cfg, const DmaDesign & /*design*/)
{
    const auto grid = subcarrier_grid(cfg);
    require(k < grid.size(), "snr: subcarrier index out of range");
    return snr(grid.frequencies[k], cfg);
}

std::vector<double> snr_vector(const SubcarrierGrid &grid, const ScenarioConfig &cfg)
{
    std::vector<double> rho(grid.size());
    for (std::size_t k = 0; k < rho.size(); ++k)
        rho[k] = snr(grid.frequencies[k], cfg);
    return rho;
}

double radiated_power(std::size_t /*k*/, const ScenarioConfig &cfg, const DmaDesign &design)
{
    return per_subcarrier_power(cfg) * radiated_fraction(design);
}

double normalization_target(const DmaDesign &design)
{
    return design.N_slot < 2 ? design.Lambda : radiated_fraction(design);
}

double normalization(std::span<const cplx> weights, std::span<const double> h_att, const DmaDesign &design)
{
    require(weights.size() == h_att.size(), "normalization: weight and taper lengths differ");
    double energy = 0.0;
    for (std::size_t n = 0; n < weights.size(); ++n)
        energy += std::norm(weights[n] * h_att[n]);
    require(energy > 0.0, "normalization: weight vector radiates no power");
    return normalization_target(design) / energy;
}

double beamforming_gain(std::size_t k, const ChannelSet &channels, const CMatrix &weights, const DmaDesign &design)
{
    check_shapes(channels, weights);
    require(k < channels.subcarriers(), "beamforming_gain: subcarrier index out of range");
    const auto p = project(k, channels, weights);
    if (p.weight_energy == 0.0)
        return 0.0;
    return normalization_target(design) / p.weight_energy * std::norm(p.inner);
}

double taper_normalized_gain(std::size_t k, const ChannelSet &channels, const CMatrix &weights)
{
    check_shapes(channels, weights);
    require(k < channels.subcarriers(), "taper_normalized_gain: subcarrier index out of range");
    const auto p = project(k, channels, weights);
    return std::norm(p.inner) / p.taper_energy;
}

GainSpectrum evaluate(const ChannelSet &channels, const CMatrix &weights, const ScenarioConfig &cfg,
                      const DmaDesign &design)
{
    check_shapes(channels, weights);
    const std::size_t K = channels.subcarriers();
    GainSpectrum s;
    s.frequencies = channels.grid.frequencies;
    s.rho = snr_vector(channels.grid, cfg);
    s.gain.resize(K);
    s.se.resize(K);
    const double target = normalization_target(design);

#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < K; ++k) {
        const auto p = project(k, channels, weights);
        s.gain[k] = p.weight_energy == 0.0 ? 0.0 : target / p.weight_energy * std::norm(p.inner);
        s.se[k] = std::log2(1.0 + s.rho[k] * s.gain[k]);
    }
    finish(s, cfg);
    return s;
}

GainSpectrum evaluate(const ChannelSet &channels, const ResonanceConfiguration &res, const ScenarioConfig &cfg,
                      const DmaDesign &design)
{
    return evaluate(channels, dma_weights(res, channels.grid.frequencies, design), cfg, design);
}

GainSpectrum evaluate_phased_array(const ChannelSet &channels, const PhasedArrayWeights &weights,
                                   const ScenarioConfig &cfg)
{
    require(weights.w.rows() == channels.subcarriers() && weights.w.cols() == channels.elements(),
            "phased array weights must be K x N_slot matching the channel set");
    const std::size_t K = channels.subcarriers();
    GainSpectrum s;
    s.frequencies = channels.grid.frequencies;
    s.rho = snr_vector(channels.grid, cfg);
    s.gain.resize(K);
    s.se.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        s.rho[k] *= weights.snr_scale;
        cplx inner{0.0, 0.0};
        for (std::size_t n = 0; n < channels.elements(); ++n)
            inner += channels.wireless(k, n) * weights.w(k, n);
        s.gain[k] = std::norm(inner);
        s.se[k] = std::log2(1.0 + s.rho[k] * s.gain[k]);
    }
    finish(s, cfg);
    return s;
}

double spectral_efficiency(const ChannelSet &channels, const CMatrix &weights, const ScenarioConfig &cfg,
                           const DmaDesign &design)
{
    return evaluate(channels, weights, cfg, design).C;
}

double data_rate(const ScenarioConfig &cfg, double se)
{
    require(se >= 0.0, "data_rate: spectral efficiency must be >= 0");
    return cfg.B * se;
}

GainSpectrum run_link(Algorithm algorithm, const ChannelSet &channels, const ScenarioConfig &cfg,
                      const DmaDesign &design, std::size_t R_res, double loss_dB)
{
    switch (algorithm) {
    case Algorithm::center_frequency: {
        const auto grid = resonance_grid(design, R_res);
        return evaluate(channels, center_frequency_beamformer(channels, grid, design), cfg, design);
    }
    case Algorithm::successive: {
        const auto grid = resonance_grid(design, R_res);
        const auto rho = snr_vector(channels.grid, cfg);
        return evaluate(channels, successive_beamformer(channels, rho, grid, design), cfg, design);
    }
    case Algorithm::phased_array:
        return evaluate_phased_array(channels, phased_array_baseline(channels, loss_dB), cfg);
    }
    throw std::invalid_argument("run_link: unknown algorithm");
}

GainSpectrum run_link(Algorithm algorithm, const ScenarioConfig &cfg, const DmaDesign &design, std::size_t R_res,
                      double loss_dB)
{
    const auto grid = subcarrier_grid(cfg);
    return run_link(algorithm, effective_channel(cfg, design, grid), cfg, design, R_res, loss_dB);
}

MaxRateResult max_data_rate(const DmaDesign &design, const ScenarioConfig &cfg_template,
                            std::span<const double> B_list, Algorithm algorithm, std::size_t R_res)
{
    require(!B_list.empty(), "max_data_rate: empty bandwidth list");
    MaxRateResult out;
    out.bandwidths.assign(B_list.begin(), B_list.end());
    out.rates.resize(B_list.size());
    for (std::size_t i = 0; i < B_list.size(); ++i) {
        ScenarioConfig cfg = cfg_template;
        cfg.B = B_list[i];
        out.rates[i] = run_link(algorithm, cfg, design, R_res).D;
    }
    for (std::size_t i = 1; i < out.rates.size(); ++i)
        if (out.rates[i] > out.rates[out.best])
            out.best = i;
    out.D_max = out.rates[out.best];
    return out;
}

} // namespace dma
