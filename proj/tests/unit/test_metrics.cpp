#include <doctest.h>

#include <cmath>

#include "dma/approx.hpp"
#include "dma/metrics.hpp"
#include "../support/random.hpp"

using namespace dma;
using dma::testing::close;

namespace {

ScenarioConfig validation_scenario()
{
    ScenarioConfig cfg = default_scenario();
    cfg.B = 10e6;
    cfg.K = 16;
    return cfg;
}

CMatrix matched_weights(const ChannelSet &ch)
{
    CMatrix w(ch.subcarriers(), ch.elements());
    for (std::size_t k = 0; k < ch.subcarriers(); ++k)
        for (std::size_t n = 0; n < ch.elements(); ++n)
            w(k, n) = std::conj(ch.h(k, n));
    return w;
}

double cf_gain_sum(const ScenarioConfig &cfg, const DmaDesign &d)
{
    return run_link(Algorithm::center_frequency, cfg, d).G_sum;
}

}

TEST_SUITE("metrics") {

TEST_CASE("snr reference value and scaling")
{
    ScenarioConfig cfg = default_scenario();
    cfg.B = 64e6;
    cfg.K = 64;
    CHECK(snr(15e9, cfg) == doctest::Approx(987.13807884787521).epsilon(1e-12));

    ScenarioConfig more = cfg;
    more.K = 128;
    CHECK(snr(15e9, more) == doctest::Approx(snr(15e9, cfg)).epsilon(1e-14));

    ScenarioConfig far = cfg;
    far.r = 200.0;
    CHECK(snr(15e9, far) == doctest::Approx(snr(15e9, cfg) / 4.0).epsilon(1e-14));

    const auto grid = subcarrier_grid(cfg);
    const auto rho = snr_vector(grid, cfg);
    CHECK(rho[grid.center_index] == snr(grid.center_index, cfg, default_design()));
    for (std::size_t k = 1; k < rho.size(); ++k)
        CHECK(rho[k] < rho[k - 1]);
}

TEST_CASE("radiated power and normalization target")
{
    const auto cfg = default_scenario();
    DmaDesign d = default_design();
    CHECK(radiated_power(0, cfg, d) == doctest::Approx(per_subcarrier_power(cfg) * d.Lambda).epsilon(1e-12));
    CHECK(normalization_target(d) == doctest::Approx(d.Lambda).epsilon(1e-12));
    d.N_slot = 1;
    CHECK(radiated_power(0, cfg, d) == 0.0);
    CHECK(normalization_target(d) == d.Lambda);
}

TEST_CASE("normalization")
{
    DmaDesign d = default_design();
    d.N_slot = 1;
    const std::vector<cplx> one{cplx{0.0, -1.0}};
    const std::vector<double> unit{1.0};
    CHECK(normalization(one, unit, d) == d.Lambda);

    d = default_design();
    d.N_slot = 4;
    dma::testing::Random rnd(6);
    for (int i = 0; i < 500; ++i) {
        std::vector<cplx> w(4);
        std::vector<double> t(4);
        for (std::size_t n = 0; n < 4; ++n) {
            w[n] = {rnd.uniform(-1.0, 1.0), rnd.uniform(-1.0, 1.0)};
            t[n] = rnd.uniform(0.1, 1.0);
        }
        const double M = normalization(w, t, d);
        double energy = 0.0;
        for (std::size_t n = 0; n < 4; ++n)
            energy += std::norm(w[n] * t[n]);
        REQUIRE(std::abs(M * energy - normalization_target(d)) <= 1e-12);

        const double s = rnd.uniform(0.1, 10.0);
        std::vector<cplx> scaled = w;
        for (auto &v : scaled)
            v *= s;
        REQUIRE(close(normalization(scaled, t, d), M / (s * s), 1e-12));
    }

    const std::vector<cplx> zero(4, cplx{0.0, 0.0});
    const std::vector<double> taper(4, 1.0);
    CHECK_THROWS_AS(normalization(zero, taper, d), std::invalid_argument);
}

TEST_CASE("single-slot gain is the radiated fraction")
{
    ScenarioConfig cfg = default_scenario();
    DmaDesign d = default_design();
    d.N_slot = 1;
    const auto ch = effective_channel(cfg, d, subcarrier_grid(cfg));
    const auto spectrum = run_link(Algorithm::center_frequency, ch, cfg, d);
    for (double g : spectrum.gain)
        CHECK(g == doctest::Approx(d.Lambda).epsilon(1e-12));
}

TEST_CASE("matched weights reach the coherent array gain")
{
    const auto cfg = default_scenario();
    for (double lambda : {1e-6, 0.5, 0.9}) {
        DmaDesign d = default_design();
        d.Lambda = lambda;
        const auto ch = effective_channel(cfg, d, subcarrier_grid(cfg));
        const auto w = matched_weights(ch);
        const double expected = normalization_target(d) * static_cast<double>(d.N_slot) * a_leak_exact(d);
        for (std::size_t k = 0; k < ch.subcarriers(); ++k)
            REQUIRE(beamforming_gain(k, ch, w, d) == doctest::Approx(expected).epsilon(1e-10));
    }
    DmaDesign d = default_design();
    d.Lambda = 1e-6;
    const auto ch = effective_channel(cfg, d, subcarrier_grid(cfg));
    const double ratio = beamforming_gain(0, ch, matched_weights(ch), d) / normalization_target(d);
    CHECK(ratio == doctest::Approx(32.0).epsilon(1e-5));
}

TEST_CASE("unit-taper gain at the centre tracks the approximation")
{
    const auto cfg = default_scenario();
    const auto d = default_design();
    const auto grid = subcarrier_grid(cfg);
    const auto ch = effective_channel(cfg, d, grid);
    const auto res = center_frequency_beamformer(ch, resonance_grid(d), d);
    const auto w = dma_weights(res, ch.grid.frequencies, d);
    const double measured = taper_normalized_gain(grid.center_index, ch, w);
    CHECK(close(measured, approx_gain(grid.center_index, d, cfg), 0.10));
}

TEST_CASE("spectral efficiency")
{
    const auto cfg = default_scenario();
    const auto d = default_design();
    const auto ch = effective_channel(cfg, d, subcarrier_grid(cfg));

    const CMatrix zero(ch.subcarriers(), ch.elements());
    CHECK(spectral_efficiency(ch, zero, cfg, d) == 0.0);
    const auto dark = evaluate(ch, zero, cfg, d);
    CHECK(dark.G_sum == 0.0);

    const auto w = matched_weights(ch);
    CMatrix rotated = w;
    for (std::size_t k = 0; k < rotated.rows(); ++k)
        for (std::size_t n = 0; n < rotated.cols(); ++n)
            rotated(k, n) *= std::polar(1.0, 0.7 + 0.1 * static_cast<double>(k));
    CHECK(spectral_efficiency(ch, rotated, cfg, d) == doctest::Approx(spectral_efficiency(ch, w, cfg, d)).epsilon(1e-12));

    const auto spectrum = evaluate(ch, w, cfg, d);
    double sum = 0.0;
    double se = 0.0;
    for (std::size_t k = 0; k < spectrum.gain.size(); ++k) {
        sum += spectrum.gain[k];
        se += std::log2(1.0 + spectrum.rho[k] * spectrum.gain[k]);
        REQUIRE(spectrum.se[k] == std::log2(1.0 + spectrum.rho[k] * spectrum.gain[k]));
    }
    CHECK(spectrum.G_sum == doctest::Approx(sum).epsilon(1e-14));
    CHECK(spectrum.C == doctest::Approx(se / static_cast<double>(spectrum.gain.size())).epsilon(1e-14));
    CHECK(spectrum.D == doctest::Approx(cfg.B * spectrum.C).epsilon(1e-14));
    CHECK(data_rate(cfg, 2.0) == 2.0 * cfg.B);
    CHECK_THROWS_AS(data_rate(cfg, -1.0), std::invalid_argument);
}

TEST_CASE("single-subcarrier efficiency")
{
    ScenarioConfig cfg = default_scenario();
    cfg.K = 2;
    cfg.B = 1e6;
    const auto d = default_design();
    const auto ch = effective_channel(cfg, d, subcarrier_grid(cfg));
    const auto w = matched_weights(ch);
    const auto s = evaluate(ch, w, cfg, d);
    const double expected = 0.5 * (std::log2(1.0 + s.rho[0] * s.gain[0]) + std::log2(1.0 + s.rho[1] * s.gain[1]));
    CHECK(s.C == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("successive beamformer is never worse than the centre-frequency beamformer")
{
    dma::testing::Random rnd(44);
    for (int trial = 0; trial < 6; ++trial) {
        ScenarioConfig cfg = default_scenario();
        cfg.B = rnd.uniform(0.1e9, 4e9);
        cfg.K = 16;
        cfg.phi_t = rnd.uniform(-1.0, 1.0);
        DmaDesign d = default_design();
        d.N_slot = 16;
        const double cf = run_link(Algorithm::center_frequency, cfg, d, 201).C;
        const double sc = run_link(Algorithm::successive, cfg, d, 201).C;
        CHECK(sc >= cf * (1.0 - 2e-3));
    }
}

TEST_CASE("configuration evaluation matches explicit weights")
{
    const auto cfg = default_scenario();
    const auto d = default_design();
    const auto ch = effective_channel(cfg, d, subcarrier_grid(cfg));
    const auto res = center_frequency_beamformer(ch, resonance_grid(d, 101), d);
    const auto a = evaluate(ch, res, cfg, d);
    const auto b = evaluate(ch, dma_weights(res, ch.grid.frequencies, d), cfg, d);
    CHECK(a.gain == b.gain);
    CHECK(a.C == b.C);
}

TEST_CASE("phased-array link")
{
    const auto cfg = default_scenario();
    const auto d = default_design();
    const auto ch = effective_channel(cfg, d, subcarrier_grid(cfg));
    const auto lossless = evaluate_phased_array(ch, phased_array_baseline(ch, 0.0), cfg);
    CHECK(lossless.gain[ch.grid.center_index] == doctest::Approx(32.0).epsilon(1e-12));
    const auto lossy = evaluate_phased_array(ch, phased_array_baseline(ch, 8.8), cfg);
    CHECK(lossy.rho[0] == doctest::Approx(lossless.rho[0] * std::pow(10.0, -0.88)).epsilon(1e-14));
    CHECK(lossy.C < lossless.C);
}

TEST_CASE("maximum data rate")
{
    ScenarioConfig cfg = default_scenario();
    cfg.K = 16;
    DmaDesign d = default_design();
    d.N_slot = 16;
    const std::vector<double> single{1e9};
    const auto one = max_data_rate(d, cfg, single, Algorithm::center_frequency, 101);
    REQUIRE(one.rates.size() == 1);
    CHECK(one.best == 0);
    CHECK(one.D_max == one.rates[0]);

    const std::vector<double> list{0.25e9, 0.5e9, 1e9, 2e9};
    const auto cf = max_data_rate(d, cfg, list, Algorithm::center_frequency, 101);
    const auto sc = max_data_rate(d, cfg, list, Algorithm::successive, 101);
    for (double r : cf.rates)
        CHECK(r <= cf.D_max);
    CHECK(cf.rates[cf.best] == cf.D_max);
    CHECK(sc.D_max >= cf.D_max * (1.0 - 2e-3));
}

TEST_CASE("centre-frequency gain grows with the radiated fraction")
{
    ScenarioConfig cfg = validation_scenario();
    double previous = 0.0;
    for (double lambda : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        DmaDesign d = default_design();
        d.Lambda = lambda;
        const double g = cf_gain_sum(cfg, d);
        CHECK(g > previous);
        previous = g;
    }
}

TEST_CASE("centre-frequency gain grows with the tuning range")
{
    ScenarioConfig cfg = validation_scenario();
    double previous = 0.0;
    for (double b : {0.05e9, 0.1e9, 0.2e9, 0.3e9, 0.5e9, 1e9, 2e9}) {
        DmaDesign d = default_design();
        d.B_tune = b;
        const double g = cf_gain_sum(cfg, d);
        CHECK(g > previous);
        previous = g;
    }
}

}
