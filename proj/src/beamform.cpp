#include "dma/beamform.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "dma/csv.hpp"

namespace dma {

namespace {

cplx center_target(cplx h)
{
    return lorentzian_weight(std::arg(std::conj(h)));
}

// Candidate weights at the centre subcarrier; the nearest one to a target wins.
class CenterKernel {
public:
    CenterKernel(const ChannelSet &channels, const ResonanceGrid &grid, const DmaDesign &design)
    {
        require(grid.size() > 0, "center_frequency_beamformer: empty resonance grid");
        require(channels.subcarriers() > 0, "center_frequency_beamformer: empty channel set");
        require(channels.elements() == design.N_slot, "center_frequency_beamformer: channel/design size mismatch");
        const double f_c = channels.grid.center();
        candidates_.reserve(grid.size());
        for (double f_r : grid.values)
            candidates_.push_back(normalized_polarizability(f_c, f_r, design));
    }

    [[gnu::noinline]] std::size_t pick(cplx target) const
    {
        std::size_t best = 0;
        double best_distance = std::abs(target - candidates_[0]);
        for (std::size_t r = 1; r < candidates_.size(); ++r) {
            const double distance = std::abs(target - candidates_[r]);
            if (distance < best_distance) {
                best_distance = distance;
                best = r;
            }
        }
        return best;
    }

private:
    std::vector<cplx> candidates_;
};

class SuccessiveKernel {
public:
    SuccessiveKernel(const ChannelSet &channels, std::span<const double> snr, const ResonanceGrid &grid,
                     const DmaDesign &design)
        : K_(channels.subcarriers()), R_(grid.size()), snr_(snr)
    {
        require(R_ > 0, "successive_beamformer: empty resonance grid");
        require(K_ > 0, "successive_beamformer: empty channel set");
        require(snr.size() == K_, "successive_beamformer: SNR list length must equal the subcarrier count");
        require(channels.elements() == design.N_slot, "successive_beamformer: channel/design size mismatch");
        response_.resize(R_ * K_);
        for (std::size_t r = 0; r < R_; ++r)
            for (std::size_t k = 0; k < K_; ++k)
                response_[r * K_ + k] = normalized_polarizability(channels.grid.frequencies[k], grid.values[r], design);
    }

    std::size_t candidates() const { return R_; }

    cplx contribution(std::size_t r, std::size_t k, cplx coeff) const { return response_[r * K_ + k] * coeff; }

    [[gnu::noinline]] double objective(std::size_t r, const cplx *coeff, const cplx *running) const
    {
        const cplx *row = response_.data() + r * K_;
        double acc = 0.0;
        for (std::size_t k = 0; k < K_; ++k)
            acc += std::log2(1.0 + snr_[k] * std::norm(row[k] * coeff[k] + running[k]));
        return acc / static_cast<double>(K_);
    }

private:
    std::size_t K_;
    std::size_t R_;
    std::span<const double> snr_;
    std::vector<cplx> response_;   // R x K
};

std::vector<cplx> stage_coefficients(const ChannelSet &channels, std::size_t n)
{
    std::vector<cplx> coeff(channels.subcarriers());
    for (std::size_t k = 0; k < coeff.size(); ++k)
        coeff[k] = channels.h_att(k, n) * channels.h(k, n);
    return coeff;
}

std::size_t first_argmax(const std::vector<double> &values)
{
    std::size_t best = 0;
    for (std::size_t r = 1; r < values.size(); ++r)
        if (values[r] > values[best])
            best = r;
    return best;
}

enum class Execution { parallel, serial };

ResonanceConfiguration run_center(const ChannelSet &channels, const ResonanceGrid &grid, const DmaDesign &design,
                                  Execution mode)
{
    const CenterKernel kernel(channels, grid, design);
    const std::size_t c = channels.grid.center_index;
    const std::size_t N = channels.elements();
    ResonanceConfiguration res;
    res.f_r.resize(N);
    if (mode == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t n = 0; n < N; ++n)
            res.f_r[n] = grid.values[kernel.pick(center_target(channels.h(c, n)))];
    } else {
        for (std::size_t n = 0; n < N; ++n)
            res.f_r[n] = grid.values[kernel.pick(center_target(channels.h(c, n)))];
    }
    return res;
}

ResonanceConfiguration run_successive(const ChannelSet &channels, std::span<const double> snr,
                                      const ResonanceGrid &grid, const DmaDesign &design, Execution mode)
{
    const SuccessiveKernel kernel(channels, snr, grid, design);
    const std::size_t K = channels.subcarriers();
    const std::size_t N = channels.elements();
    const std::size_t R = kernel.candidates();
    std::vector<cplx> running(K, cplx{0.0, 0.0});
    std::vector<double> objective(R);
    ResonanceConfiguration res;
    res.f_r.resize(N);
    for (std::size_t n = 0; n < N; ++n) {
        const auto coeff = stage_coefficients(channels, n);
        if (mode == Execution::parallel) {
#pragma omp parallel for schedule(static)
            for (std::size_t r = 0; r < R; ++r)
                objective[r] = kernel.objective(r, coeff.data(), running.data());
        } else {
            for (std::size_t r = 0; r < R; ++r)
                objective[r] = kernel.objective(r, coeff.data(), running.data());
        }
        const std::size_t best = first_argmax(objective);
        res.f_r[n] = grid.values[best];
        for (std::size_t k = 0; k < K; ++k)
            running[k] += kernel.contribution(best, k, coeff[k]);
    }
    return res;
}

} // namespace

ResonanceGrid resonance_grid(const DmaDesign &design, std::size_t R_res)
{
    require(R_res >= 1, "resonance_grid: R_res must be >= 1");
    ResonanceGrid grid;
    if (R_res == 1) {
        grid.values = {design.f_t};
        return grid;
    }
    const auto range = tuning_range(design);
    grid.values.resize(R_res);
    const double span = range.width();
    const double last = static_cast<double>(R_res - 1);
    for (std::size_t r = 0; r < R_res; ++r)
        grid.values[r] = range.f_r_min + span * (static_cast<double>(r) / last);
    grid.values.back() = range.f_r_max;
    return grid;
}

std::string_view to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::center_frequency:
        return "center_frequency";
    case Algorithm::successive:
        return "successive";
    case Algorithm::phased_array:
        return "phased_array";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name)
{
    if (name == "center_frequency" || name == "cf")
        return Algorithm::center_frequency;
    if (name == "successive")
        return Algorithm::successive;
    if (name == "phased_array")
        return Algorithm::phased_array;
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

ResonanceConfiguration center_frequency_beamformer(const ChannelSet &channels, const ResonanceGrid &grid,
                                                   const DmaDesign &design)
{
    return run_center(channels, grid, design, Execution::parallel);
}

ResonanceConfiguration center_frequency_tuning_closed_form(const ChannelSet &channels, const DmaDesign &design)
{
    require(channels.subcarriers() > 0, "center_frequency_tuning_closed_form: empty channel set");
    const std::size_t c = channels.grid.center_index;
    const double f_c = channels.grid.center();
    const double slope = design.gamma() / (8.0 * kPi);
    ResonanceConfiguration res;
    res.f_r.resize(channels.elements());
    for (std::size_t n = 0; n < res.size(); ++n) {
        const double phi = channels.phase(c, n);
        const double reduced = phi - 2.0 * kPi * std::floor((phi + kPi) / (2.0 * kPi));
        res.f_r[n] = -slope * reduced + f_c;
    }
    return res;
}

ResonanceConfiguration successive_beamformer(const ChannelSet &channels, std::span<const double> snr,
                                             const ResonanceGrid &grid, const DmaDesign &design)
{
    return run_successive(channels, snr, grid, design, Execution::parallel);
}

std::vector<double> successive_stage_objectives(const ChannelSet &channels, std::span<const double> snr,
                                                const ResonanceGrid &grid, const DmaDesign &design,
                                                std::span<const double> prefix)
{
    require(prefix.size() < channels.elements(), "successive_stage_objectives: prefix covers every slot");
    const SuccessiveKernel kernel(channels, snr, grid, design);
    const std::size_t K = channels.subcarriers();
    std::vector<cplx> running(K, cplx{0.0, 0.0});
    for (std::size_t m = 0; m < prefix.size(); ++m)
        for (std::size_t k = 0; k < K; ++k)
            running[k] += normalized_polarizability(channels.grid.frequencies[k], prefix[m], design) *
                          (channels.h_att(k, m) * channels.h(k, m));
    const auto coeff = stage_coefficients(channels, prefix.size());
    std::vector<double> objective(kernel.candidates());
    for (std::size_t r = 0; r < objective.size(); ++r)
        objective[r] = kernel.objective(r, coeff.data(), running.data());
    return objective;
}

PhasedArrayWeights phased_array_baseline(const ChannelSet &channels, double loss_dB)
{
    require(channels.subcarriers() > 0, "phased_array_baseline: empty channel set");
    require(std::isfinite(loss_dB), "phased_array_baseline: loss must be finite");
    const std::size_t K = channels.subcarriers();
    const std::size_t N = channels.elements();
    const std::size_t c = channels.grid.center_index;
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    PhasedArrayWeights out;
    out.w = CMatrix(K, N);
    for (std::size_t n = 0; n < N; ++n) {
        const cplx a = channels.wireless(c, n);
        const cplx w = std::conj(a / std::abs(a)) * scale;
        for (std::size_t k = 0; k < K; ++k)
            out.w(k, n) = w;
    }
    out.snr_scale = std::pow(10.0, -loss_dB / 10.0);
    return out;
}

namespace reference {

ResonanceConfiguration center_frequency_beamformer(const ChannelSet &channels, const ResonanceGrid &grid,
                                                   const DmaDesign &design)
{
    return run_center(channels, grid, design, Execution::serial);
}

ResonanceConfiguration successive_beamformer(const ChannelSet &channels, std::span<const double> snr,
                                             const ResonanceGrid &grid, const DmaDesign &design)
{
    return run_successive(channels, snr, grid, design, Execution::serial);
}

} // namespace reference

void write_configuration_csv(std::ostream &out, const ResonanceConfiguration &res)
{
    csv::write_row(out, {"n", "f_r"});
    for (std::size_t n = 0; n < res.size(); ++n)
        csv::write_row(out, {std::to_string(n), csv::format(res.f_r[n])});
}

ResonanceConfiguration read_configuration_csv(std::istream &in)
{
    const auto table = csv::read(in);
    require(table.header == std::vector<std::string>{"n", "f_r"}, "configuration csv: unexpected header");
    ResonanceConfiguration res;
    res.f_r.resize(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto n = csv::parse_unsigned(table.rows[i][0]);
        require(n == i, "configuration csv: rows must be ordered by n");
        res.f_r[i] = csv::parse_double(table.rows[i][1]);
    }
    return res;
}

} // namespace dma
