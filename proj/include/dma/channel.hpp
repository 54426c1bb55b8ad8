#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dma/params.hpp"
#include "dma/types.hpp"

namespace dma {

// Per-subcarrier channel state of one link. Row k of every matrix belongs to
// grid.frequencies[k]; column n is the n-th slot counted from the waveguide feed.
struct ChannelSet {
    SubcarrierGrid grid;
    CMatrix h;          // effective channel: wireless part times waveguide phase
    CMatrix wireless;   // free-space part only (used by the phased-array baseline)
    RMatrix h_att;      // leakage taper
    RMatrix phase;      // unwrapped phase of h; for multipath channels the principal argument

    std::size_t subcarriers() const { return h.rows(); }
    std::size_t elements() const { return h.cols(); }
};

struct MultipathSpec {
    std::size_t L_path = 4;
    double angle_min = -60.0 * kPi / 180.0;
    double angle_max = 60.0 * kPi / 180.0;
    double delay_max = 50e-9;
    std::uint64_t seed = 1;
    // Path 0 becomes the deterministic LOS ray: angle phi_t, zero delay, gain 1/sqrt(L_path).
    bool pin_first_to_los = false;
};

struct PathComponent {
    cplx gain;
    double angle;
    double delay;
};

// Entry n = exp(j n (2 pi f / c) d_x sin(phi)).
std::vector<cplx> array_response(double phi, double f, const DmaDesign &design);

// Entry n = exp(-j n d_x beta_g(f)).
std::vector<cplx> waveguide_phase_vector(double f, const DmaDesign &design);

// Entry n = exp(-n d_x alpha_g), frequency flat.
std::vector<double> leakage_vector(double f, const DmaDesign &design);

// Phase of h_n at frequency f: n d_x ((2 pi f / c) sin(phi) - beta_g(f)), not wrapped.
double channel_phase(std::size_t n, double f, double phi, const DmaDesign &design);

ChannelSet effective_channel(const ScenarioConfig &cfg, const DmaDesign &design, const SubcarrierGrid &grid);

std::vector<PathComponent> draw_paths(const MultipathSpec &spec, double phi_t);

ChannelSet multipath_channel(const std::vector<PathComponent> &paths, const DmaDesign &design,
                             const SubcarrierGrid &grid);
ChannelSet multipath_channel(const MultipathSpec &spec, const ScenarioConfig &cfg, const DmaDesign &design,
                             const SubcarrierGrid &grid);

// Columns k, f_k, n, re_h, im_h, h_att with k and n 0-based.
void write_channel_csv(std::ostream &out, const ChannelSet &channels);

} // namespace dma
