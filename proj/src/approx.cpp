#include "dma/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "dma/channel.hpp"
#include "dma/csv.hpp"
#include "dma/element.hpp"

namespace dma {

double ApproxBreakdown::sum() const
{
    return std::accumulate(product.begin(), product.end(), 0.0);
}

double chi_o(double f, double f_c, double phi, const DmaDesign &design)
{
    const double delta = f - f_c;
    const double wireless = 2.0 * kPi * delta / kSpeedOfLight * std::sin(phi);
    const double guided = waveguide_beta(f, design) - waveguide_beta(f_c, design);
    return design.d_x * (wireless - guided);
}

double chi_o(std::size_t k, const ScenarioConfig &cfg, const DmaDesign &design)
{
    const auto grid = subcarrier_grid(cfg);
    require(k < grid.size(), "chi_o: subcarrier index out of range");
    return chi_o(grid.frequencies[k], grid.center(), cfg.phi_t, design);
}

double f_freq(double chi, std::size_t N_slot)
{
    require(N_slot >= 1, "f_freq: N_slot must be >= 1");
    const double N = static_cast<double>(N_slot);
    const double reduced = std::remainder(chi, 2.0 * kPi);
    if (reduced == 0.0)
        return N / 4.0;
    const double ratio = std::sin(N * reduced / 2.0) / std::sin(reduced / 2.0);
    const double amplitude = 0.5 / std::sqrt(N) * ratio;
    return amplitude * amplitude;
}

double f_freq(std::size_t k, const ScenarioConfig &cfg, const DmaDesign &design)
{
    return f_freq(chi_o(k, cfg, design), design.N_slot);
}

double f_freq_sum(double chi, std::size_t N_slot)
{
    require(N_slot >= 1, "f_freq_sum: N_slot must be >= 1");
    std::complex<long double> acc{0.0L, 0.0L};
    for (std::size_t n = 0; n < N_slot; ++n)
        acc += std::polar(1.0L, static_cast<long double>(n) * static_cast<long double>(chi));
    return static_cast<double>(std::norm(acc) * 0.25L / static_cast<long double>(N_slot));
}

double weight_ratio(const DmaDesign &design)
{
    const auto range = tuning_range(design);
    const double upper = std::arg(normalized_polarizability(design.f_t, range.f_r_max, design));
    const double lower = std::arg(normalized_polarizability(design.f_t, range.f_r_min, design));
    return std::abs(upper - lower) / kPi;
}

double fill_angle(const DmaDesign &design)
{
    return kPi * weight_ratio(design);
}

double w_fill(double xi)
{
    require(xi >= 0.0 && xi <= kPi, "w_fill: xi must lie in [0, pi]");
    const double v = (2.0 * std::sin(xi) + 2.0 * xi) / (2.0 * kPi);
    return v * v;
}

double a_leak(double Lambda)
{
    require(Lambda > 0.0 && Lambda < 1.0, "a_leak: Lambda must lie in (0, 1)");
    const double l = std::log1p(-Lambda);
    return 4.0 / l * std::tanh(l / 4.0);
}

double a_leak_exact(const DmaDesign &design)
{
    require(design.N_slot >= 2, "a_leak_exact: N_slot must be >= 2");
    const double a = leakage_constant(design) * design.d_x;
    if (a == 0.0)
        return 1.0;
    const double N = static_cast<double>(design.N_slot);
    return std::tanh(N * a / 2.0) / (N * std::tanh(a / 2.0));
}

ApproxBreakdown approx_breakdown(const ScenarioConfig &cfg, const DmaDesign &design)
{
    const auto grid = subcarrier_grid(cfg);
    ApproxBreakdown out;
    out.frequencies = grid.frequencies;
    out.W_fill = w_fill(fill_angle(design));
    out.A_leak = a_leak(design.Lambda);
    out.F_freq.resize(grid.size());
    out.product.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out.F_freq[k] = f_freq(chi_o(grid.frequencies[k], grid.center(), cfg.phi_t, design), design.N_slot);
        out.product[k] = out.F_freq[k] * out.W_fill * out.A_leak;
    }
    return out;
}

double approx_gain(std::size_t k, const DmaDesign &design, const ScenarioConfig &cfg)
{
    const auto breakdown = approx_breakdown(cfg, design);
    require(k < breakdown.product.size(), "approx_gain: subcarrier index out of range");
    return breakdown.product[k];
}

cplx propagation_lobe(double phi_o, std::size_t N_slot)
{
    require(N_slot >= 1, "propagation_lobe: N_slot must be >= 1");
    const double N = static_cast<double>(N_slot);
    const double reduced = std::remainder(phi_o, 2.0 * kPi);
    if (reduced == 0.0)
        return {1.0, 0.0};
    const double magnitude = std::sin(N * reduced / 2.0) / (N * std::sin(reduced / 2.0));
    return std::polar(1.0, (N - 1.0) * reduced / 2.0) * magnitude;
}

cplx propagation_lobe(double phi_t, double f, const DmaDesign &design)
{
    return propagation_lobe(channel_phase(1, f, phi_t, design), design.N_slot);
}

namespace {

struct ChunkMoments {
    double re = 0.0, im = 0.0;
    double re2 = 0.0, im2 = 0.0, reim = 0.0;
};

constexpr std::size_t kOracleChunk = 1u << 16;

cplx clipped_phasor(double delta, double xi)
{
    if (delta > xi)
        return std::polar(1.0, xi - delta);
    if (delta < -xi)
        return std::polar(1.0, -xi - delta);
    return {1.0, 0.0};
}

} // namespace

MonteCarloEstimate w_fill_oracle(double xi, std::size_t samples, std::uint64_t seed)
{
    require(xi >= 0.0 && xi <= kPi, "w_fill_oracle: xi must lie in [0, pi]");
    require(samples >= 2, "w_fill_oracle: need at least two samples");
    const std::size_t chunks = (samples + kOracleChunk - 1) / kOracleChunk;
    std::vector<ChunkMoments> moments(chunks);

#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < chunks; ++c) {
        std::mt19937_64 rng(seed + c);
        std::uniform_real_distribution<double> theta(-kPi, kPi);
        const std::size_t begin = c * kOracleChunk;
        const std::size_t end = std::min(samples, begin + kOracleChunk);
        ChunkMoments m;
        for (std::size_t i = begin; i < end; ++i) {
            const double delta = std::remainder(theta(rng) + kPi / 2.0, 2.0 * kPi);
            const cplx z = clipped_phasor(delta, xi);
            m.re += z.real();
            m.im += z.imag();
            m.re2 += z.real() * z.real();
            m.im2 += z.imag() * z.imag();
            m.reim += z.real() * z.imag();
        }
        moments[c] = m;
    }

    ChunkMoments total;
    for (const auto &m : moments) {
        total.re += m.re;
        total.im += m.im;
        total.re2 += m.re2;
        total.im2 += m.im2;
        total.reim += m.reim;
    }
    const double n = static_cast<double>(samples);
    const double mr = total.re / n;
    const double mi = total.im / n;
    const double var_rr = (total.re2 - n * mr * mr) / (n - 1.0);
    const double var_ii = (total.im2 - n * mi * mi) / (n - 1.0);
    const double cov_ri = (total.reim - n * mr * mi) / (n - 1.0);

    const double modulus = std::hypot(mr, mi);
    double std_error = (std::max(var_rr, 0.0) + std::max(var_ii, 0.0)) / n;
    if (modulus > 0.0) {
        const double ur = mr / modulus;
        const double ui = mi / modulus;
        const double var_projection = ur * ur * var_rr + 2.0 * ur * ui * cov_ri + ui * ui * var_ii;
        std_error = std::max(std_error, 2.0 * modulus * std::sqrt(std::max(var_projection, 0.0) / n));
    }
    return {modulus * modulus, std_error, samples};
}

void write_breakdown_csv(std::ostream &out, const ApproxBreakdown &breakdown)
{
    csv::write_row(out, {"k", "f_k", "F_freq", "W_fill", "A_leak", "product"});
    for (std::size_t k = 0; k < breakdown.product.size(); ++k)
        csv::write_row(out, {std::to_string(k), csv::format(breakdown.frequencies[k]), csv::format(breakdown.F_freq[k]),
                             csv::format(breakdown.W_fill), csv::format(breakdown.A_leak),
                             csv::format(breakdown.product[k])});
}

} // namespace dma
