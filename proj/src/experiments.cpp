#include "dma/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>

#include "dma/approx.hpp"
#include "dma/channel.hpp"
#include "dma/csv.hpp"
#include "dma/metrics.hpp"

namespace dma {

namespace {

struct KindInfo {
    ExperimentKind kind;
    std::string_view name;
    std::string_view axis;
};

constexpr KindInfo kKinds[] = {
    {ExperimentKind::validate_approx, "validate-approx", "B_tune"},
    {ExperimentKind::sweep_bandwidth, "sweep-bandwidth", "B"},
    {ExperimentKind::sweep_tuning, "sweep-tuning", "B_tune"},
    {ExperimentKind::sweep_lambda, "sweep-lambda", "Lambda"},
    {ExperimentKind::sweep_angle, "sweep-angle", "phi_t_deg"},
    {ExperimentKind::sweep_spacing, "sweep-spacing", "lambda_over_dx"},
    {ExperimentKind::sweep_damping, "sweep-damping", "Q"},
    {ExperimentKind::max_rate, "max-rate", "B_tune"},
    {ExperimentKind::multipath_mc, "multipath-mc", "L_path"},
};

const KindInfo &info(ExperimentKind kind)
{
    for (const auto &k : kKinds)
        if (k.kind == kind)
            return k;
    throw std::invalid_argument("unknown experiment kind");
}

// Runs body(i) for i in [0, count) across the thread pool and rethrows the first failure by index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body)
{
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < count; ++i) {
        try {
            body(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

std::string scenario_id(std::string_view axis, double value)
{
    return std::string(axis) + "=" + csv::format(value);
}

struct Point {
    double value = 0.0;
    ScenarioConfig cfg;
    DmaDesign design;
};

Point make_point(ExperimentKind kind, double value, const ScenarioConfig &cfg, const DmaDesign &design)
{
    Point p{value, cfg, design};
    switch (kind) {
    case ExperimentKind::sweep_bandwidth:
        p.cfg.B = value;
        break;
    case ExperimentKind::validate_approx:
    case ExperimentKind::sweep_tuning:
    case ExperimentKind::max_rate:
        p.design.B_tune = value;
        break;
    case ExperimentKind::sweep_lambda:
        p.design.Lambda = value;
        break;
    case ExperimentKind::sweep_angle:
        p.cfg.phi_t = value * kPi / 180.0;
        break;
    case ExperimentKind::sweep_spacing: {
        require(value > 0.0, "sweep-spacing: lambda_over_dx must be positive");
        const double aperture = static_cast<double>(design.N_slot) * design.d_x;
        p.design.d_x = kSpeedOfLight / design.f_t / value;
        const auto slots = std::llround(aperture / p.design.d_x);
        require(slots >= 1, "sweep-spacing: aperture holds no element at lambda/" + csv::format(value));
        p.design.N_slot = static_cast<std::size_t>(slots);
        break;
    }
    case ExperimentKind::sweep_damping:
        p.design.Q = value;
        break;
    case ExperimentKind::multipath_mc:
        break;
    }
    validate(p.cfg);
    validate(p.design);
    return p;
}

std::vector<Point> make_points(const ExperimentPlan &plan, const ScenarioConfig &cfg, const DmaDesign &design)
{
    std::vector<Point> points;
    for (double v : plan.resolved_axis())
        points.push_back(make_point(plan.kind, v, cfg, design));
    return points;
}

SummaryRow summary_row(std::string id, Algorithm algorithm, std::string_view axis, double value,
                       const GainSpectrum &s)
{
    return {std::move(id), std::string(to_string(algorithm)), std::string(axis), value, 1, s.G_sum, s.C, s.D, 0.0};
}

void append_spectrum(std::vector<SpectrumRow> &rows, const std::string &id, std::string_view algorithm,
                     const GainSpectrum &s)
{
    for (std::size_t k = 0; k < s.gain.size(); ++k)
        rows.push_back({id, std::string(algorithm), k, s.frequencies[k], s.gain[k], s.rho[k], s.se[k]});
}

// Spectrum whose gains come from somewhere other than the normalized DMA weights.
GainSpectrum spectrum_from_gains(std::vector<double> gains, const SubcarrierGrid &grid, const ScenarioConfig &cfg)
{
    GainSpectrum s;
    s.frequencies = grid.frequencies;
    s.rho = snr_vector(grid, cfg);
    s.gain = std::move(gains);
    s.se.resize(s.gain.size());
    for (std::size_t k = 0; k < s.gain.size(); ++k) {
        s.se[k] = std::log2(1.0 + s.rho[k] * s.gain[k]);
        s.G_sum += s.gain[k];
        s.C += s.se[k];
    }
    s.C /= static_cast<double>(s.gain.size());
    s.D = data_rate(cfg, s.C);
    return s;
}

constexpr std::string_view kUnitTaper = "center_frequency_unit_taper";
constexpr std::string_view kApprox = "approx";

struct ValidationPoint {
    GainSpectrum simulated;
    GainSpectrum unit_taper;
    GainSpectrum approx;
};

ValidationPoint validation_point(const ScenarioConfig &cfg, const DmaDesign &design, std::size_t R_res)
{
    const auto grid = subcarrier_grid(cfg);
    const auto channels = effective_channel(cfg, design, grid);
    const auto res = center_frequency_beamformer(channels, resonance_grid(design, R_res), design);
    const auto weights = dma_weights(res, grid.frequencies, design);
    ValidationPoint out;
    out.simulated = evaluate(channels, weights, cfg, design);
    std::vector<double> unit(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        unit[k] = taper_normalized_gain(k, channels, weights);
    out.unit_taper = spectrum_from_gains(std::move(unit), grid, cfg);
    out.approx = spectrum_from_gains(approx_breakdown(cfg, design).product, grid, cfg);
    return out;
}

void append_validation_summary(std::vector<SummaryRow> &rows, const std::string &id, std::string_view axis,
                               double value, const ValidationPoint &p)
{
    rows.push_back(summary_row(id, Algorithm::center_frequency, axis, value, p.simulated));
    rows.push_back({id, std::string(kUnitTaper), std::string(axis), value, 1, p.unit_taper.G_sum, p.unit_taper.C,
                    p.unit_taper.D, 0.0});
    rows.push_back({id, std::string(kApprox), std::string(axis), value, 1, p.approx.G_sum, p.approx.C, p.approx.D, 0.0});
}

ExperimentResult run_validation(const ExperimentPlan &plan, const ScenarioConfig &cfg, const DmaDesign &design)
{
    ScenarioConfig narrow = cfg;
    narrow.B = plan.validation_B;
    narrow.K = plan.validation_K;
    validate(narrow);

    const auto tuning_axis = plan.resolved_axis();
    const auto lambda_axis = plan.lambdas.empty() ? default_validation_lambdas() : plan.lambdas;
    std::vector<DmaDesign> designs;
    for (double v : tuning_axis) {
        DmaDesign d = design;
        d.B_tune = v;
        validate(d);
        designs.push_back(d);
    }
    for (double v : lambda_axis) {
        DmaDesign d = design;
        d.Lambda = v;
        validate(d);
        designs.push_back(d);
    }
    ScenarioConfig wide = cfg;
    wide.B = plan.subcarrier_B;
    wide.K = plan.subcarrier_K;
    validate(wide);

    const std::size_t n_sweep = designs.size();
    std::vector<ValidationPoint> points(n_sweep + 1);
    parallel_for(n_sweep + 1, [&](std::size_t i) {
        points[i] = i < n_sweep ? validation_point(narrow, designs[i], plan.R_res)
                                : validation_point(wide, design, plan.R_res);
    });

    ExperimentResult result;
    SummaryTable tuning{"tuning", {}};
    for (std::size_t i = 0; i < tuning_axis.size(); ++i)
        append_validation_summary(tuning.rows, scenario_id("B_tune", tuning_axis[i]), "B_tune", tuning_axis[i],
                                  points[i]);
    SummaryTable lambda{"lambda", {}};
    for (std::size_t i = 0; i < lambda_axis.size(); ++i)
        append_validation_summary(lambda.rows, scenario_id("Lambda", lambda_axis[i]), "Lambda", lambda_axis[i],
                                  points[tuning_axis.size() + i]);
    SpectrumTable subcarrier{"subcarrier", {}};
    const auto &wide_point = points[n_sweep];
    const std::string id = scenario_id("B", wide.B);
    append_spectrum(subcarrier.rows, id, to_string(Algorithm::center_frequency), wide_point.simulated);
    append_spectrum(subcarrier.rows, id, kUnitTaper, wide_point.unit_taper);
    append_spectrum(subcarrier.rows, id, kApprox, wide_point.approx);

    result.summaries = {std::move(tuning), std::move(lambda)};
    result.spectra = {std::move(subcarrier)};
    return result;
}

constexpr Algorithm kDmaAlgorithms[] = {Algorithm::center_frequency, Algorithm::successive};

ExperimentResult run_sweep(const ExperimentPlan &plan, const ScenarioConfig &cfg, const DmaDesign &design)
{
    const auto points = make_points(plan, cfg, design);
    const std::size_t A = std::size(kDmaAlgorithms);
    std::vector<GainSpectrum> spectra(points.size() * A);
    parallel_for(spectra.size(), [&](std::size_t i) {
        const auto &p = points[i / A];
        spectra[i] = run_link(kDmaAlgorithms[i % A], p.cfg, p.design, plan.R_res);
    });

    const std::string_view axis = axis_name(plan.kind);
    SummaryTable summary{"summary", {}};
    SpectrumTable spectrum{"spectrum", {}};
    for (std::size_t i = 0; i < spectra.size(); ++i) {
        const auto &p = points[i / A];
        const Algorithm algorithm = kDmaAlgorithms[i % A];
        const auto id = scenario_id(axis, p.value);
        summary.rows.push_back(summary_row(id, algorithm, axis, p.value, spectra[i]));
        append_spectrum(spectrum.rows, id, to_string(algorithm), spectra[i]);
    }
    ExperimentResult result;
    result.summaries = {std::move(summary)};
    result.spectra = {std::move(spectrum)};
    return result;
}

ExperimentResult run_max_rate(const ExperimentPlan &plan, const ScenarioConfig &cfg, const DmaDesign &design)
{
    const auto points = make_points(plan, cfg, design);
    const auto bandwidths = plan.bandwidths.empty() ? default_max_rate_bandwidths() : plan.bandwidths;
    for (double B : bandwidths) {
        ScenarioConfig c = cfg;
        c.B = B;
        validate(c);
    }
    const std::size_t A = std::size(kDmaAlgorithms);
    const std::size_t nB = bandwidths.size();
    std::vector<GainSpectrum> spectra(points.size() * A * nB);
    parallel_for(spectra.size(), [&](std::size_t i) {
        const auto &p = points[i / (A * nB)];
        ScenarioConfig c = p.cfg;
        c.B = bandwidths[i % nB];
        spectra[i] = run_link(kDmaAlgorithms[(i / nB) % A], c, p.design, plan.R_res);
    });

    SummaryTable summary{"summary", {}};
    SummaryTable curves{"curves", {}};
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const auto id = scenario_id("B_tune", points[pi].value);
        for (std::size_t a = 0; a < A; ++a) {
            const std::size_t base = (pi * A + a) * nB;
            std::size_t best = 0;
            for (std::size_t b = 0; b < nB; ++b) {
                const auto &s = spectra[base + b];
                curves.rows.push_back(summary_row(id, kDmaAlgorithms[a], "B", bandwidths[b], s));
                if (s.D > spectra[base + best].D)
                    best = b;
            }
            summary.rows.push_back(
                summary_row(id, kDmaAlgorithms[a], "B_tune", points[pi].value, spectra[base + best]));
        }
    }
    ExperimentResult result;
    result.summaries = {std::move(summary), std::move(curves)};
    return result;
}

struct TrialOutcome {
    double C[3] = {0.0, 0.0, 0.0};
    double G[3] = {0.0, 0.0, 0.0};
};

ExperimentResult run_multipath(const ExperimentPlan &plan, const ScenarioConfig &cfg, const DmaDesign &design)
{
    validate(cfg);
    validate(design);
    const auto axis = plan.resolved_axis();
    for (double L : axis)
        require(L >= 1.0 && L == std::floor(L), "multipath-mc: L_path values must be positive integers");

    const std::size_t T = plan.trials;
    const auto grid = subcarrier_grid(cfg);
    const auto rgrid = resonance_grid(design, plan.R_res);
    const auto rho = snr_vector(grid, cfg);
    constexpr Algorithm order[3] = {Algorithm::center_frequency, Algorithm::successive, Algorithm::phased_array};

    std::vector<TrialOutcome> outcomes(axis.size() * T);
    parallel_for(outcomes.size(), [&](std::size_t i) {
        MultipathSpec spec;
        spec.L_path = static_cast<std::size_t>(axis[i / T]);
        spec.seed = plan.seed + i % T;
        spec.pin_first_to_los = plan.pin_los;
        const auto channels = multipath_channel(spec, cfg, design, grid);
        const GainSpectrum s[3] = {
            evaluate(channels, center_frequency_beamformer(channels, rgrid, design), cfg, design),
            evaluate(channels, successive_beamformer(channels, rho, rgrid, design), cfg, design),
            evaluate_phased_array(channels, phased_array_baseline(channels, plan.loss_dB), cfg),
        };
        for (int a = 0; a < 3; ++a) {
            outcomes[i].C[a] = s[a].C;
            outcomes[i].G[a] = s[a].G_sum;
        }
    });

    auto mean_se = [T](const std::vector<double> &v) {
        double mean = 0.0;
        for (double x : v)
            mean += x;
        mean /= static_cast<double>(T);
        if (T < 2)
            return std::pair{mean, 0.0};
        double ss = 0.0;
        for (double x : v)
            ss += (x - mean) * (x - mean);
        return std::pair{mean, std::sqrt(ss / static_cast<double>(T - 1) / static_cast<double>(T))};
    };

    SummaryTable summary{"summary", {}};
    for (std::size_t li = 0; li < axis.size(); ++li) {
        const auto id = scenario_id("L_path", axis[li]);
        std::vector<double> C(T), G(T), gap(T);
        for (int a = 0; a < 3; ++a) {
            for (std::size_t t = 0; t < T; ++t) {
                C[t] = outcomes[li * T + t].C[a];
                G[t] = outcomes[li * T + t].G[a];
            }
            const auto [c_mean, c_se] = mean_se(C);
            const auto [g_mean, g_se] = mean_se(G);
            (void)g_se;
            summary.rows.push_back({id, std::string(to_string(order[a])), "L_path", axis[li], T, g_mean, c_mean,
                                    data_rate(cfg, c_mean), c_se});
        }
        for (std::size_t t = 0; t < T; ++t)
            gap[t] = outcomes[li * T + t].C[1] - outcomes[li * T + t].C[0];
        const auto [gap_mean, gap_se] = mean_se(gap);
        summary.rows.push_back({id, "successive_minus_center_frequency", "L_path", axis[li], T, 0.0, gap_mean,
                                cfg.B * gap_mean, gap_se});
    }
    ExperimentResult result;
    result.summaries = {std::move(summary)};
    return result;
}

} // namespace

std::string_view to_string(ExperimentKind kind)
{
    return info(kind).name;
}

ExperimentKind parse_experiment_kind(std::string_view name)
{
    for (const auto &k : kKinds)
        if (k.name == name)
            return k.kind;
    throw std::invalid_argument("unknown experiment kind '" + std::string(name) + "'");
}

const std::vector<ExperimentKind> &all_experiment_kinds()
{
    static const std::vector<ExperimentKind> kinds = [] {
        std::vector<ExperimentKind> v;
        for (const auto &k : kKinds)
            v.push_back(k.kind);
        return v;
    }();
    return kinds;
}

std::string_view axis_name(ExperimentKind kind)
{
    return info(kind).axis;
}

std::vector<double> default_axis(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::validate_approx:
        return {0.05e9, 0.1e9, 0.2e9, 0.3e9, 0.5e9, 1e9, 2e9};
    case ExperimentKind::sweep_bandwidth:
        return {0.05e9, 0.1e9, 0.2e9, 0.5e9, 1e9, 1.5e9, 2e9, 3e9, 4e9, 5e9};
    case ExperimentKind::sweep_tuning:
        return {0.05e9, 0.1e9, 0.2e9, 0.5e9, 1e9, 2e9, 4e9};
    case ExperimentKind::sweep_lambda:
        return {0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99};
    case ExperimentKind::sweep_angle:
        return {-60, -50, -40, -30, -20, -10, 0, 10, 20, 30, 40, 50, 60};
    case ExperimentKind::sweep_spacing:
        return {2, 3, 4};
    case ExperimentKind::sweep_damping:
        return {25, 50, 100, 200, 400};
    case ExperimentKind::max_rate:
        return {0.25e9, 0.5e9, 1e9, 2e9, 4e9};
    case ExperimentKind::multipath_mc:
        return {1, 2, 4};
    }
    return {};
}

std::vector<double> default_max_rate_bandwidths()
{
    return {0.1e9, 0.2e9, 0.5e9, 1e9, 2e9, 3e9, 4e9, 5e9};
}

std::vector<double> default_validation_lambdas()
{
    return {0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99};
}

std::vector<double> ExperimentPlan::resolved_axis() const
{
    return axis.empty() ? default_axis(kind) : axis;
}

void validate(const ExperimentPlan &plan)
{
    auto check_axis = [](const std::vector<double> &values, std::string_view what) {
        require(!values.empty(), std::string(what) + ": axis is empty");
        for (double v : values)
            require(std::isfinite(v), std::string(what) + ": axis values must be finite");
        require(std::is_sorted(values.begin(), values.end()), std::string(what) + ": axis values must be sorted ascending");
    };
    check_axis(plan.resolved_axis(), to_string(plan.kind));
    if (!plan.bandwidths.empty())
        check_axis(plan.bandwidths, "bandwidth list");
    if (!plan.lambdas.empty())
        check_axis(plan.lambdas, "Lambda list");
    require(plan.trials >= 1, "trial count must be >= 1");
    require(plan.R_res >= 1, "R_res must be >= 1");
    require(std::isfinite(plan.loss_dB), "loss_dB must be finite");
    require(plan.validation_B > 0.0 && plan.subcarrier_B > 0.0, "validation bandwidths must be positive");
}

const SummaryTable &ExperimentResult::summary(std::string_view name) const
{
    for (const auto &t : summaries)
        if (t.name == name)
            return t;
    throw std::out_of_range("no summary table named '" + std::string(name) + "'");
}

const SpectrumTable &ExperimentResult::spectrum(std::string_view name) const
{
    for (const auto &t : spectra)
        if (t.name == name)
            return t;
    throw std::out_of_range("no spectrum table named '" + std::string(name) + "'");
}

ExperimentResult execute(const ExperimentPlan &plan, const ScenarioConfig &cfg, const DmaDesign &design)
{
    validate(plan);
    switch (plan.kind) {
    case ExperimentKind::validate_approx:
        return run_validation(plan, cfg, design);
    case ExperimentKind::max_rate:
        return run_max_rate(plan, cfg, design);
    case ExperimentKind::multipath_mc:
        return run_multipath(plan, cfg, design);
    default:
        return run_sweep(plan, cfg, design);
    }
}

namespace {

std::ofstream open_output(const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << csv::timestamp_line() << '\n';
    return out;
}

void close_output(std::ofstream &out, const std::filesystem::path &path)
{
    out.close();
    if (!out)
        throw std::runtime_error("failed while writing " + path.string());
}

} // namespace

std::vector<std::filesystem::path> write_result(const ExperimentResult &result, const ExperimentPlan &plan)
{
    std::error_code ec;
    std::filesystem::create_directories(plan.out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + plan.out_dir.string() + ": " + ec.message());
    const std::string prefix(to_string(plan.kind));
    std::vector<std::filesystem::path> written;
    for (const auto &table : result.summaries) {
        const auto path = plan.out_dir / (prefix + "_" + table.name + ".csv");
        auto out = open_output(path);
        write_summary_csv(out, table.rows);
        close_output(out, path);
        written.push_back(path);
    }
    for (const auto &table : result.spectra) {
        const auto path = plan.out_dir / (prefix + "_" + table.name + ".csv");
        auto out = open_output(path);
        write_spectrum_csv(out, table.rows);
        close_output(out, path);
        written.push_back(path);
    }
    return written;
}

std::vector<std::filesystem::path> run(const ExperimentPlan &plan, const ScenarioConfig &cfg,
                                       const DmaDesign &design)
{
    return write_result(execute(plan, cfg, design), plan);
}

namespace {

const std::vector<std::string> kSpectrumHeader = {"scenario_id", "algorithm", "k", "f_k", "gain", "rho", "se_k"};
const std::vector<std::string> kSummaryHeader = {"scenario_id", "algorithm", "axis", "value", "trials",
                                                 "G_sum",       "C",         "D",    "C_se"};

} // namespace

void write_spectrum_csv(std::ostream &out, const std::vector<SpectrumRow> &rows)
{
    csv::write_row(out, kSpectrumHeader);
    for (const auto &r : rows)
        csv::write_row(out, {r.scenario_id, r.algorithm, std::to_string(r.k), csv::format(r.f_k), csv::format(r.gain),
                             csv::format(r.rho), csv::format(r.se_k)});
}

void write_summary_csv(std::ostream &out, const std::vector<SummaryRow> &rows)
{
    csv::write_row(out, kSummaryHeader);
    for (const auto &r : rows)
        csv::write_row(out, {r.scenario_id, r.algorithm, r.axis, csv::format(r.value), std::to_string(r.trials),
                             csv::format(r.G_sum), csv::format(r.C), csv::format(r.D), csv::format(r.C_se)});
}

std::vector<SpectrumRow> read_spectrum_csv(std::istream &in)
{
    const auto table = csv::read(in);
    require(table.header == kSpectrumHeader, "spectrum csv: unexpected header");
    std::vector<SpectrumRow> rows;
    for (const auto &f : table.rows)
        rows.push_back({f[0], f[1], static_cast<std::size_t>(csv::parse_unsigned(f[2])), csv::parse_double(f[3]),
                        csv::parse_double(f[4]), csv::parse_double(f[5]), csv::parse_double(f[6])});
    return rows;
}

std::vector<SummaryRow> read_summary_csv(std::istream &in)
{
    const auto table = csv::read(in);
    require(table.header == kSummaryHeader, "summary csv: unexpected header");
    std::vector<SummaryRow> rows;
    for (const auto &f : table.rows)
        rows.push_back({f[0], f[1], f[2], csv::parse_double(f[3]), static_cast<std::size_t>(csv::parse_unsigned(f[4])),
                        csv::parse_double(f[5]), csv::parse_double(f[6]), csv::parse_double(f[7]),
                        csv::parse_double(f[8])});
    return rows;
}

} // namespace dma
