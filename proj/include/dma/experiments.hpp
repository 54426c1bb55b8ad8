#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dma/beamform.hpp"
#include "dma/params.hpp"

namespace dma {

enum class ExperimentKind {
    validate_approx,
    sweep_bandwidth,
    sweep_tuning,
    sweep_lambda,
    sweep_angle,
    sweep_spacing,
    sweep_damping,
    max_rate,
    multipath_mc,
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);
const std::vector<ExperimentKind> &all_experiment_kinds();

// Name and unit of the swept quantity:
//   validate-approx  B_tune (Hz)           sweep-bandwidth  B (Hz)
//   sweep-tuning     B_tune (Hz)           sweep-lambda     Lambda
//   sweep-angle      phi_t_deg (degrees)   sweep-spacing    lambda_over_dx, fixed aperture N_slot * d_x
//   sweep-damping    Q                     max-rate         B_tune (Hz)
//   multipath-mc     L_path
std::string_view axis_name(ExperimentKind kind);
std::vector<double> default_axis(ExperimentKind kind);

struct ExperimentPlan {
    ExperimentKind kind = ExperimentKind::sweep_bandwidth;
    std::vector<double> axis;            // empty selects default_axis(kind)
    std::size_t trials = 200;            // multipath-mc realizations per axis point
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = "results";
    std::size_t R_res = kDefaultResolution;
    double loss_dB = kDefaultPhaseShifterLossDb;
    bool pin_los = false;                // multipath-mc: path 0 is the deterministic LOS ray

    std::vector<double> bandwidths;      // max-rate bandwidth list; empty selects the default
    std::vector<double> lambdas;         // validate-approx Lambda sweep; empty selects the default
    double validation_B = 10e6;          // validate-approx tuning and Lambda sweeps
    std::size_t validation_K = 16;
    double subcarrier_B = 2e9;           // validate-approx per-subcarrier comparison
    std::size_t subcarrier_K = 128;

    std::vector<double> resolved_axis() const;
};

std::vector<double> default_max_rate_bandwidths();
std::vector<double> default_validation_lambdas();

// Rejects non-finite or unsorted axes, zero trials and an empty grid before any computation.
void validate(const ExperimentPlan &plan);

struct SpectrumRow {
    std::string scenario_id;
    std::string algorithm;
    std::size_t k = 0;
    double f_k = 0.0;
    double gain = 0.0;
    double rho = 0.0;
    double se_k = 0.0;

    bool operator==(const SpectrumRow &) const = default;
};

struct SummaryRow {
    std::string scenario_id;
    std::string algorithm;
    std::string axis;
    double value = 0.0;
    std::size_t trials = 1;
    double G_sum = 0.0;
    double C = 0.0;
    double D = 0.0;
    double C_se = 0.0;   // standard error of C over trials, 0 for deterministic rows

    bool operator==(const SummaryRow &) const = default;
};

struct SpectrumTable {
    std::string name;
    std::vector<SpectrumRow> rows;
};

struct SummaryTable {
    std::string name;
    std::vector<SummaryRow> rows;
};

struct ExperimentResult {
    std::vector<SummaryTable> summaries;
    std::vector<SpectrumTable> spectra;

    const SummaryTable &summary(std::string_view name) const;
    const SpectrumTable &spectrum(std::string_view name) const;
};

ExperimentResult execute(const ExperimentPlan &plan, const ScenarioConfig &cfg, const DmaDesign &design);

// One file per table, named <kind>_<table>.csv, each headed by a timestamp comment line.
std::vector<std::filesystem::path> write_result(const ExperimentResult &result, const ExperimentPlan &plan);

std::vector<std::filesystem::path> run(const ExperimentPlan &plan, const ScenarioConfig &cfg,
                                       const DmaDesign &design);

void write_spectrum_csv(std::ostream &out, const std::vector<SpectrumRow> &rows);
void write_summary_csv(std::ostream &out, const std::vector<SummaryRow> &rows);
std::vector<SpectrumRow> read_spectrum_csv(std::istream &in);
std::vector<SummaryRow> read_summary_csv(std::istream &in);

} // namespace dma
