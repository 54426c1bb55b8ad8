#include "dma/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dma {

SubcarrierGrid SubcarrierGrid::from_frequencies(std::vector<double> frequencies, std::size_t center_index)
{
    require(!frequencies.empty(), "subcarrier grid: empty frequency list");
    require(center_index < frequencies.size(), "subcarrier grid: center index out of range");
    for (std::size_t i = 1; i < frequencies.size(); ++i)
        require(frequencies[i] > frequencies[i - 1], "subcarrier grid: frequencies must be strictly increasing");
    for (double f : frequencies)
        require(std::isfinite(f) && f > 0.0, "subcarrier grid: frequencies must be positive and finite");
    SubcarrierGrid grid;
    grid.frequencies = std::move(frequencies);
    grid.center_index = center_index;
    return grid;
}

ScenarioConfig default_scenario()
{
    return ScenarioConfig{};
}

DmaDesign default_design(double f_t)
{
    DmaDesign design;
    design.f_t = f_t;
    design.d_x = kSpeedOfLight / f_t / 4.0;
    return design;
}

void validate(const ScenarioConfig &cfg)
{
    require(std::isfinite(cfg.f_t) && cfg.f_t > 0.0, "scenario: f_t must be positive");
    require(std::isfinite(cfg.B) && cfg.B > 0.0, "scenario: B must be positive");
    require(cfg.K >= 2 && cfg.K % 2 == 0, "scenario: K must be even and >= 2 (got " + std::to_string(cfg.K) + ")");
    require(std::abs(cfg.phi_t) < kPi / 2.0, "scenario: |phi_t| must be below pi/2");
    require(std::isfinite(cfg.r) && cfg.r > 0.0, "scenario: r must be positive");
    require(std::isfinite(cfg.P_in_tot) && cfg.P_in_tot > 0.0, "scenario: P_in_tot must be positive");
    require(std::isfinite(cfg.T_temp) && cfg.T_temp > 0.0, "scenario: T_temp must be positive");
    require(cfg.G_dma > 0.0 && cfg.G_dma <= 1.0, "scenario: G_dma must lie in (0, 1]");
}

void validate(const DmaDesign &design)
{
    require(std::isfinite(design.f_t) && design.f_t > 0.0, "design: f_t must be positive");
    require(design.N_slot >= 1, "design: N_slot must be >= 1");
    require(std::isfinite(design.d_x) && design.d_x > 0.0, "design: d_x must be positive");
    require(std::isfinite(design.Q) && design.Q > 0.0, "design: Q must be positive");
    require(std::isfinite(design.B_tune) && design.B_tune >= 0.0, "design: B_tune must be >= 0");
    require(design.B_tune < 2.0 * design.f_t, "design: tuning range must stay above 0 Hz");
    require(design.Lambda > 0.0 && design.Lambda < 1.0, "design: Lambda must lie in (0, 1)");
    require(design.eps_r > 0.0, "design: eps_r must be positive");
    require(design.f_c10 >= 0.0 && design.f_c10 < design.f_t, "design: f_c10 must lie below f_t");
    require(is_slow_wave(design), "design: beta_g(f_t) must exceed 2 pi f_t / c");
}

SubcarrierGrid subcarrier_grid(const ScenarioConfig &cfg)
{
    require(cfg.K >= 2 && cfg.K % 2 == 0, "subcarrier grid: K must be even and >= 2 (got " + std::to_string(cfg.K) + ")");
    require(cfg.B > 0.0 && cfg.f_t > 0.0, "subcarrier grid: f_t and B must be positive");
    const auto K = static_cast<double>(cfg.K);
    SubcarrierGrid grid;
    grid.frequencies.resize(cfg.K);
    for (std::size_t i = 0; i < cfg.K; ++i) {
        const double k = static_cast<double>(i + 1);
        grid.frequencies[i] = cfg.f_t + cfg.B * (k - K / 2.0) / K;
    }
    grid.center_index = cfg.K / 2 - 1;
    grid.frequencies[grid.center_index] = cfg.f_t;
    return grid;
}

double waveguide_beta(double f, const DmaDesign &design)
{
    if (!(f > design.f_c10))
        throw std::domain_error("waveguide_beta: frequency " + std::to_string(f) + " Hz is at or below the cutoff");
    return 2.0 * kPi * design.eps_r / kSpeedOfLight * std::sqrt((f - design.f_c10) * (f + design.f_c10));
}

double leakage_constant(const DmaDesign &design)
{
    if (design.N_slot < 2)
        throw std::domain_error("leakage_constant: undefined for a single element");
    require(design.Lambda > 0.0 && design.Lambda < 1.0, "leakage_constant: Lambda must lie in (0, 1)");
    return -std::log1p(-design.Lambda) / (2.0 * design.d_x * static_cast<double>(design.N_slot - 1));
}

double taper_constant(const DmaDesign &design)
{
    return design.N_slot < 2 ? 0.0 : leakage_constant(design);
}

double radiated_fraction(const DmaDesign &design)
{
    if (design.N_slot < 2)
        return 0.0;
    const double alpha = leakage_constant(design);
    return -std::expm1(-2.0 * alpha * design.d_x * static_cast<double>(design.N_slot - 1));
}

double path_loss(double f, double r)
{
    require(f > 0.0 && r > 0.0, "path_loss: f and r must be positive");
    const double a = kSpeedOfLight / (4.0 * kPi * r * f);
    return a * a;
}

double noise_power(const ScenarioConfig &cfg)
{
    require(cfg.B > 0.0 && cfg.K > 0 && cfg.T_temp > 0.0, "noise_power: B, K and T_temp must be positive");
    return kBoltzmann * cfg.T_temp * cfg.B / static_cast<double>(cfg.K);
}

double per_subcarrier_power(const ScenarioConfig &cfg)
{
    return cfg.P_in_tot / static_cast<double>(cfg.K);
}

bool is_slow_wave(const DmaDesign &design)
{
    if (!(design.f_t > design.f_c10))
        return false;
    return waveguide_beta(design.f_t, design) > 2.0 * kPi * design.f_t / kSpeedOfLight;
}

} // namespace dma
