#include "dma/channel.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "dma/csv.hpp"

namespace dma {

namespace {

double array_phase_step(double phi, double f, const DmaDesign &design)
{
    return 2.0 * kPi * f / kSpeedOfLight * design.d_x * std::sin(phi);
}

ChannelSet allocate(const SubcarrierGrid &grid, const DmaDesign &design)
{
    ChannelSet set;
    set.grid = grid;
    const std::size_t K = grid.size();
    const std::size_t N = design.N_slot;
    set.h = CMatrix(K, N);
    set.wireless = CMatrix(K, N);
    set.h_att = RMatrix(K, N);
    set.phase = RMatrix(K, N);
    return set;
}

void fill_taper(ChannelSet &set, const DmaDesign &design)
{
    const auto taper = leakage_vector(set.grid.center(), design);
    for (std::size_t k = 0; k < set.subcarriers(); ++k)
        for (std::size_t n = 0; n < set.elements(); ++n)
            set.h_att(k, n) = taper[n];
}

} // namespace

std::vector<cplx> array_response(double phi, double f, const DmaDesign &design)
{
    require(std::abs(phi) < kPi / 2.0, "array_response: |phi| must be below pi/2");
    const double step = array_phase_step(phi, f, design);
    std::vector<cplx> a(design.N_slot);
    for (std::size_t n = 0; n < a.size(); ++n)
        a[n] = std::polar(1.0, static_cast<double>(n) * step);
    return a;
}

std::vector<cplx> waveguide_phase_vector(double f, const DmaDesign &design)
{
    const double step = design.d_x * waveguide_beta(f, design);
    std::vector<cplx> v(design.N_slot);
    for (std::size_t n = 0; n < v.size(); ++n)
        v[n] = std::polar(1.0, -static_cast<double>(n) * step);
    return v;
}

std::vector<double> leakage_vector(double /*f*/, const DmaDesign &design)
{
    const double alpha = taper_constant(design);
    std::vector<double> v(design.N_slot);
    for (std::size_t n = 0; n < v.size(); ++n)
        v[n] = std::exp(-static_cast<double>(n) * design.d_x * alpha);
    return v;
}

double channel_phase(std::size_t n, double f, double phi, const DmaDesign &design)
{
    return static_cast<double>(n) * (array_phase_step(phi, f, design) - design.d_x * waveguide_beta(f, design));
}

ChannelSet effective_channel(const ScenarioConfig &cfg, const DmaDesign &design, const SubcarrierGrid &grid)
{
    require(design.N_slot >= 1, "effective_channel: N_slot must be >= 1");
    ChannelSet set = allocate(grid, design);
    const std::size_t K = grid.size();

    // Surface argument errors outside the parallel region.
    require(std::abs(cfg.phi_t) < kPi / 2.0, "effective_channel: |phi_t| must be below pi/2");
    for (double f : grid.frequencies)
        (void)waveguide_beta(f, design);

#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < K; ++k) {
        const double f = grid.frequencies[k];
        const auto a = array_response(cfg.phi_t, f, design);
        const auto dma = waveguide_phase_vector(f, design);
        for (std::size_t n = 0; n < design.N_slot; ++n) {
            set.wireless(k, n) = a[n];
            set.h(k, n) = a[n] * dma[n];
            set.phase(k, n) = channel_phase(n, f, cfg.phi_t, design);
        }
    }
    fill_taper(set, design);
    return set;
}

std::vector<PathComponent> draw_paths(const MultipathSpec &spec, double phi_t)
{
    require(spec.L_path >= 1, "multipath: L_path must be >= 1");
    require(spec.angle_min <= spec.angle_max, "multipath: angle range is empty");
    require(spec.angle_min > -kPi / 2.0 && spec.angle_max < kPi / 2.0, "multipath: angles must lie inside (-pi/2, pi/2)");
    require(spec.delay_max >= 0.0, "multipath: delay_max must be >= 0");

    const double L = static_cast<double>(spec.L_path);
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> component(0.0, std::sqrt(0.5 / L));
    std::uniform_real_distribution<double> angle(spec.angle_min, spec.angle_max);
    std::uniform_real_distribution<double> delay(0.0, spec.delay_max);

    std::vector<PathComponent> paths(spec.L_path);
    for (auto &p : paths) {
        const double re = component(rng);
        const double im = component(rng);
        p.gain = {re, im};
        p.angle = angle(rng);
        p.delay = spec.delay_max > 0.0 ? delay(rng) : 0.0;
    }
    if (spec.pin_first_to_los) {
        paths[0].gain = {1.0 / std::sqrt(L), 0.0};
        paths[0].angle = phi_t;
        paths[0].delay = 0.0;
    }
    return paths;
}

ChannelSet multipath_channel(const std::vector<PathComponent> &paths, const DmaDesign &design,
                             const SubcarrierGrid &grid)
{
    require(!paths.empty(), "multipath: at least one path required");
    ChannelSet set = allocate(grid, design);
    const std::size_t K = grid.size();
    for (const auto &p : paths)
        require(std::abs(p.angle) < kPi / 2.0, "multipath: path angle must lie inside (-pi/2, pi/2)");
    for (double f : grid.frequencies)
        (void)waveguide_beta(f, design);

#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < K; ++k) {
        const double f = grid.frequencies[k];
        std::vector<cplx> sum(design.N_slot, cplx{0.0, 0.0});
        for (const auto &p : paths) {
            const auto a = array_response(p.angle, f, design);
            const cplx coeff = p.gain * std::polar(1.0, -2.0 * kPi * f * p.delay);
            for (std::size_t n = 0; n < sum.size(); ++n)
                sum[n] += coeff * a[n];
        }
        const auto dma = waveguide_phase_vector(f, design);
        for (std::size_t n = 0; n < design.N_slot; ++n) {
            set.wireless(k, n) = sum[n];
            set.h(k, n) = sum[n] * dma[n];
            set.phase(k, n) = std::arg(set.h(k, n));
        }
    }
    fill_taper(set, design);
    return set;
}

ChannelSet multipath_channel(const MultipathSpec &spec, const ScenarioConfig &cfg, const DmaDesign &design,
                             const SubcarrierGrid &grid)
{
    return multipath_channel(draw_paths(spec, cfg.phi_t), design, grid);
}

void write_channel_csv(std::ostream &out, const ChannelSet &channels)
{
    csv::write_row(out, {"k", "f_k", "n", "re_h", "im_h", "h_att"});
    for (std::size_t k = 0; k < channels.subcarriers(); ++k) {
        for (std::size_t n = 0; n < channels.elements(); ++n) {
            const cplx v = channels.h(k, n);
            csv::write_row(out, {std::to_string(k), csv::format(channels.grid.frequencies[k]), std::to_string(n),
                                 csv::format(v.real()), csv::format(v.imag()), csv::format(channels.h_att(k, n))});
        }
    }
}

} // namespace dma
