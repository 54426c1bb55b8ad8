#include <doctest.h>

#include <cmath>

#include "dma/element.hpp"
#include "../support/random.hpp"

using namespace dma;
using dma::testing::close;

TEST_SUITE("element") {

TEST_CASE("tuning range is centred on the carrier")
{
    const auto d = default_design();
    const auto r = tuning_range(d);
    CHECK(r.f_r_min == d.f_t - 1e9);
    CHECK(r.f_r_max == d.f_t + 1e9);
    CHECK(r.width() == d.B_tune);
}

TEST_CASE("polarizability at resonance is -j Q F")
{
    DmaDesign d = default_design();
    d.F_coupl = 2.5;
    const double f = 15e9;
    const double Q_k = 2.0 * kPi * f / d.gamma();
    const cplx a = polarizability(f, f, d);
    CHECK(a.real() == doctest::Approx(0.0));
    CHECK(a.imag() == doctest::Approx(-Q_k * d.F_coupl).epsilon(1e-14));
    CHECK(std::abs(polarizability(f, 1e15, d)) < 1e-6);
}

TEST_CASE("normalized polarizability reference values")
{
    const auto d = default_design();
    CHECK(detuning(15e9, 15.1e9, d) == doctest::Approx(1.3377777777777778).epsilon(1e-14));
    const cplx v = normalized_polarizability(15e9, 15.1e9, d);
    CHECK(v.real() == doctest::Approx(0.47955050769688301).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(-0.35846798748105873).epsilon(1e-14));
    CHECK(polarizability_phase(15e9, 15.1e9, d) == doctest::Approx(0.92889181057792501).epsilon(1e-14));

    CHECK(normalized_polarizability(15e9, 15e9, d) == cplx{0.0, -1.0});
    CHECK(std::abs(normalized_polarizability(15e9, 1e13, d)) < 1e-5);
}

TEST_CASE("rational and normalized forms agree")
{
    dma::testing::Random rnd(21);
    for (int i = 0; i < 2000; ++i) {
        DmaDesign d = default_design();
        d.Q = rnd.uniform(5.0, 1000.0);
        d.F_coupl = rnd.uniform(0.1, 10.0);
        const double f = rnd.uniform(10e9, 20e9);
        const double f_r = rnd.uniform(10e9, 20e9);
        const double Q_k = 2.0 * kPi * f / d.gamma();
        const cplx via_raw = polarizability(f, f_r, d) / (Q_k * d.F_coupl);
        REQUIRE(std::abs(via_raw - normalized_polarizability(f, f_r, d)) < 1e-12);
    }
}

TEST_CASE("polarizability phase")
{
    const auto d = default_design();
    CHECK(polarizability_phase(15e9, 15e9, d) == 0.0);
    CHECK(std::arg(normalized_polarizability(15e9, 15e9, d)) == doctest::Approx(-kPi / 2.0));
    CHECK(polarizability_phase(15e9, 1e14, d) == doctest::Approx(kPi / 2.0).epsilon(1e-6));

    dma::testing::Random rnd(8);
    for (int i = 0; i < 1000; ++i) {
        const double f = rnd.uniform(14e9, 16e9);
        const double f_r = rnd.uniform(14e9, 16e9);
        const double true_arg = std::arg(normalized_polarizability(f, f_r, d));
        REQUIRE(std::abs(true_arg - (polarizability_phase(f, f_r, d) - kPi / 2.0)) < 1e-12);
    }
}

TEST_CASE("linear phase approximation")
{
    const auto d = default_design();
    CHECK(linear_phase_approx(15e9, 15e9, d) == -kPi / 2.0);
    const double delta = 1e6;
    const double slope = (linear_phase_approx(15e9 + delta, 15e9, d) - linear_phase_approx(15e9 - delta, 15e9, d)) /
                         (2.0 * delta);
    CHECK(slope == doctest::Approx(-4.0 * kPi / d.gamma()).epsilon(1e-9));
}

TEST_CASE("linear phase error shrinks fourfold per halving for small detuning")
{
    const auto d = default_design();
    const double f_r = 15e9;
    auto max_error = [&](double span) {
        double worst = 0.0;
        for (int i = -200; i <= 200; ++i) {
            const double f = f_r + span * i / 200.0;
            const double exact = polarizability_phase(f, f_r, d) - kPi / 2.0;
            worst = std::max(worst, std::abs(exact - linear_phase_approx(f, f_r, d)));
        }
        return worst;
    };
    const double span = d.gamma() / (16.0 * kPi) / 1024.0;
    const double ratio = max_error(span) / max_error(span / 2.0);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("lorentzian weight examples")
{
    CHECK(std::abs(lorentzian_weight(kPi / 2.0)) < 1e-16);
    CHECK(std::abs(lorentzian_weight(3.0 * kPi / 2.0) - cplx{0.0, -1.0}) < 1e-15);
    const cplx w0 = lorentzian_weight(0.0);
    CHECK(w0 == cplx{0.5, -0.5});
    CHECK(std::abs(w0) == doctest::Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("weights lie on the Lorentzian circle")
{
    dma::testing::Random rnd(1);
    for (int i = 0; i < 10000; ++i) {
        DmaDesign d = default_design();
        d.Q = rnd.uniform(1.0, 1e4);
        const double f = rnd.uniform(1e9, 100e9);
        const double f_r = rnd.uniform(1e9, 100e9);
        const cplx w = normalized_polarizability(f, f_r, d);
        REQUIRE(std::abs(std::abs(w + cplx{0.0, 0.5}) - 0.5) <= 1e-12);
        REQUIRE(std::abs(std::abs(lorentzian_weight(rnd.uniform(-10.0, 10.0)) + cplx{0.0, 0.5}) - 0.5) <= 1e-12);
    }
}

TEST_CASE("amplitude-phase form")
{
    dma::testing::Random rnd(2);
    const auto d = default_design();
    for (int i = 0; i < 5000; ++i) {
        const double f = rnd.uniform(12e9, 18e9);
        const double f_r = rnd.uniform(12e9, 18e9);
        const double psi = polarizability_phase(f, f_r, d);
        const cplx form = std::cos(psi) * std::polar(1.0, psi - kPi / 2.0);
        REQUIRE(std::abs(form - normalized_polarizability(f, f_r, d)) <= 1e-12);
    }
}

TEST_CASE("amplitude peaks at resonance and falls with detuning")
{
    const auto d = default_design();
    CHECK(std::abs(normalized_polarizability(15e9, 15e9, d)) == 1.0);
    double previous = 1.0;
    for (int i = 1; i <= 200; ++i) {
        const double f_r = 15e9 + i * 5e6;
        const double amp = std::abs(normalized_polarizability(15e9, f_r, d));
        REQUIRE(amp < previous);
        previous = amp;
    }
}

TEST_CASE("coupling factor cancels")
{
    dma::testing::Random rnd(4);
    for (int i = 0; i < 1000; ++i) {
        DmaDesign a = default_design();
        DmaDesign b = a;
        b.F_coupl = rnd.uniform(1e-3, 1e3);
        const double f = rnd.uniform(14e9, 16e9);
        const double f_r = rnd.uniform(14e9, 16e9);
        REQUIRE(normalized_polarizability(f, f_r, a) == normalized_polarizability(f, f_r, b));
    }
}

TEST_CASE("weight vector")
{
    DmaDesign d = default_design();
    d.N_slot = 4;
    ResonanceConfiguration res{{15e9, 15e9, 15e9, 15e9}};
    for (const auto &w : dma_weight_vector(res, 15e9, d))
        CHECK(w == cplx{0.0, -1.0});

    res.f_r = {14.5e9, 15e9, 15.1e9, 15.9e9};
    const auto w = dma_weight_vector(res, 15e9, d);
    for (std::size_t n = 0; n < 4; ++n)
        CHECK(w[n] == normalized_polarizability(15e9, res.f_r[n], d));

    d.N_slot = 1;
    const auto single = dma_weight_vector(ResonanceConfiguration{{15.1e9}}, 15e9, d);
    CHECK(single[0] == normalized_polarizability(15e9, 15.1e9, d));

    CHECK_THROWS_AS(dma_weight_vector(ResonanceConfiguration{{16.5e9}}, 15e9, d), std::invalid_argument);
    CHECK_THROWS_AS(dma_weight_vector(ResonanceConfiguration{{15e9, 15e9}}, 15e9, d), std::invalid_argument);
}

}
