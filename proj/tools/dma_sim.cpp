// dma_sim: batch runner for the DMA beamforming experiments.
//
//   dma_sim sweep-bandwidth --out results
//   dma_sim multipath-mc --trials 200 --seed 7 --axis 1,2,4
//   dma_sim validate-approx --config scenario.cfg --B_tune 1e9

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "dma/config_io.hpp"
#include "dma/experiments.hpp"

namespace {

struct Options {
    std::string config;
    std::string out = "results";
    std::uint64_t seed = 1;
    std::vector<double> axis;
    std::vector<double> bandwidths;
    std::size_t trials = 200;
    std::size_t R_res = dma::kDefaultResolution;
    double loss_dB = dma::kDefaultPhaseShifterLossDb;
    bool pin_los = false;
    std::map<std::string, std::string> overrides;
};

std::string describe(dma::ExperimentKind kind)
{
    using K = dma::ExperimentKind;
    switch (kind) {
    case K::validate_approx:
        return "closed-form gain approximation vs simulated centre-frequency gain";
    case K::sweep_bandwidth:
        return "spectral efficiency over signal bandwidth B";
    case K::sweep_tuning:
        return "spectral efficiency over tuning bandwidth B_tune";
    case K::sweep_lambda:
        return "spectral efficiency over radiated fraction Lambda";
    case K::sweep_angle:
        return "spectral efficiency over user angle (degrees)";
    case K::sweep_spacing:
        return "spectral efficiency over lambda/d_x at fixed aperture";
    case K::sweep_damping:
        return "spectral efficiency over quality factor Q";
    case K::max_rate:
        return "best data rate over a bandwidth list, per B_tune";
    case K::multipath_mc:
        return "Monte-Carlo multipath comparison over L_path";
    }
    return {};
}

void add_common_options(CLI::App &cmd, Options &opt)
{
    cmd.add_option("--config", opt.config, "key = value scenario/design file")->check(CLI::ExistingFile);
    cmd.add_option("--out", opt.out, "output directory");
    cmd.add_option("--seed", opt.seed, "RNG seed for Monte-Carlo kinds");
    cmd.add_option("--axis", opt.axis, "sweep axis values, ascending")->delimiter(',');
    cmd.add_option("--trials", opt.trials, "Monte-Carlo trials per axis point")->check(CLI::PositiveNumber);
    cmd.add_option("--R_res", opt.R_res, "resonance grid resolution")->check(CLI::PositiveNumber);
    cmd.add_option("--loss_dB", opt.loss_dB, "phase-shifter loss of the phased-array baseline");
    cmd.add_flag("--pin_los", opt.pin_los, "multipath: path 0 is the deterministic LOS ray");
    cmd.add_option("--bandwidths", opt.bandwidths, "max-rate bandwidth list (Hz)")->delimiter(',');
    for (const auto &key : dma::config_keys())
        cmd.add_option_function<std::string>(
            "--" + key, [&opt, key](const std::string &v) { opt.overrides[key] = v; },
            "override config field " + key);
}

int run_command(dma::ExperimentKind kind, const Options &opt)
{
    dma::ScenarioConfig cfg = dma::default_scenario();
    dma::DmaDesign design = dma::default_design(cfg.f_t);
    dma::Settings settings;
    if (!opt.config.empty())
        settings = dma::read_settings_file(opt.config);
    for (const auto &[k, v] : opt.overrides)
        settings[k] = v;
    dma::apply_settings(settings, cfg, design);
    dma::validate(cfg);
    dma::validate(design);

    dma::ExperimentPlan plan;
    plan.kind = kind;
    plan.axis = opt.axis;
    plan.bandwidths = opt.bandwidths;
    plan.trials = opt.trials;
    plan.seed = opt.seed;
    plan.out_dir = opt.out;
    plan.R_res = opt.R_res;
    plan.loss_dB = opt.loss_dB;
    plan.pin_los = opt.pin_los;

    for (const auto &path : dma::run(plan, cfg, design))
        std::cout << path.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Wideband dynamic metasurface antenna beamforming experiments"};
    app.require_subcommand(1);

    Options opt;
    std::optional<dma::ExperimentKind> chosen;
    for (const auto kind : dma::all_experiment_kinds()) {
        auto *cmd = app.add_subcommand(std::string(dma::to_string(kind)), describe(kind));
        add_common_options(*cmd, opt);
        cmd->callback([&chosen, kind] { chosen = kind; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::fprintf(stderr, "dma_sim: error: %s\n", e.what());
        return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
    }

    try {
        return run_command(*chosen, opt);
    } catch (const std::exception &e) {
        std::fprintf(stderr, "dma_sim: error: %s\n", e.what());
        return 1;
    }
}
