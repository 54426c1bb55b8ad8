#pragma once

#include <span>
#include <vector>

#include "dma/params.hpp"
#include "dma/types.hpp"

namespace dma {

struct TuningRange {
    double f_r_min = 0.0;
    double f_r_max = 0.0;

    double width() const { return f_r_max - f_r_min; }
    bool contains(double f_r) const { return f_r >= f_r_min && f_r <= f_r_max; }
};

// [f_t - B_tune/2, f_t + B_tune/2]
TuningRange tuning_range(const DmaDesign &design);

struct ResonanceConfiguration {
    std::vector<double> f_r;   // one resonant frequency per slot, feed first

    std::size_t size() const { return f_r.size(); }
    bool operator==(const ResonanceConfiguration &) const = default;
};

// Throws if the size differs from N_slot or an entry leaves the tuning range.
void validate(const ResonanceConfiguration &res, const DmaDesign &design);

// Magnetic polarizability 2 pi f^2 F / (2 pi f_r^2 - 2 pi f^2 + j Gamma f).
cplx polarizability(double f, double f_r, const DmaDesign &design);

// x = 2 pi (f_r^2 - f^2) / (Gamma f), the detuning that parameterizes the normalized response.
double detuning(double f, double f_r, const DmaDesign &design);

// Polarizability divided by Q_k F_coupl with Q_k = 2 pi f / Gamma; equals 1 / (x + j).
cplx normalized_polarizability(double f, double f_r, const DmaDesign &design);

// Psi = atan(x). The argument of the normalized polarizability is Psi - pi/2.
double polarizability_phase(double f, double f_r, const DmaDesign &design);

// -pi/2 - (4 pi / Gamma)(f - f_r): first-order model of Psi - pi/2 around f = f_r.
double linear_phase_approx(double f, double f_r, const DmaDesign &design);

// -(j - e^{j zeta}) / 2, a point on the circle of radius 1/2 centred at -j/2.
cplx lorentzian_weight(double zeta);

std::vector<cplx> dma_weight_vector(const ResonanceConfiguration &res, double f, const DmaDesign &design);

// K x N_slot weights, one row per subcarrier of `frequencies`.
CMatrix dma_weights(const ResonanceConfiguration &res, std::span<const double> frequencies, const DmaDesign &design);

} // namespace dma
