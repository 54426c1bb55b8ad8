#include "dma/element.hpp"

#include <cmath>
#include <string>

namespace dma {

TuningRange tuning_range(const DmaDesign &design)
{
    return {design.f_t - design.B_tune / 2.0, design.f_t + design.B_tune / 2.0};
}

void validate(const ResonanceConfiguration &res, const DmaDesign &design)
{
    require(res.size() == design.N_slot, "resonance configuration: expected " + std::to_string(design.N_slot) +
                                             " entries, got " + std::to_string(res.size()));
    const auto range = tuning_range(design);
    for (std::size_t n = 0; n < res.size(); ++n)
        require(range.contains(res.f_r[n]),
                "resonance configuration: element " + std::to_string(n) + " lies outside the tuning range");
}

cplx polarizability(double f, double f_r, const DmaDesign &design)
{
    const double two_pi = 2.0 * kPi;
    const cplx denominator{two_pi * (f_r - f) * (f_r + f), design.gamma() * f};
    return two_pi * f * f * design.F_coupl / denominator;
}

double detuning(double f, double f_r, const DmaDesign &design)
{
    return 2.0 * kPi * (f_r - f) * (f_r + f) / (design.gamma() * f);
}

cplx normalized_polarizability(double f, double f_r, const DmaDesign &design)
{
    const double x = detuning(f, f_r, design);
    const double d = x * x + 1.0;
    return {x / d, -1.0 / d};
}

double polarizability_phase(double f, double f_r, const DmaDesign &design)
{
    return std::atan(detuning(f, f_r, design));
}

double linear_phase_approx(double f, double f_r, const DmaDesign &design)
{
    return -kPi / 2.0 - (4.0 * kPi / design.gamma()) * (f - f_r);
}

cplx lorentzian_weight(double zeta)
{
    return -(cplx{0.0, 1.0} - std::polar(1.0, zeta)) / 2.0;
}

std::vector<cplx> dma_weight_vector(const ResonanceConfiguration &res, double f, const DmaDesign &design)
{
    validate(res, design);
    std::vector<cplx> w(res.size());
    for (std::size_t n = 0; n < w.size(); ++n)
        w[n] = normalized_polarizability(f, res.f_r[n], design);
    return w;
}

CMatrix dma_weights(const ResonanceConfiguration &res, std::span<const double> frequencies, const DmaDesign &design)
{
    validate(res, design);
    CMatrix w(frequencies.size(), res.size());
    for (std::size_t k = 0; k < frequencies.size(); ++k)
        for (std::size_t n = 0; n < res.size(); ++n)
            w(k, n) = normalized_polarizability(frequencies[k], res.f_r[n], design);
    return w;
}

} // namespace dma
