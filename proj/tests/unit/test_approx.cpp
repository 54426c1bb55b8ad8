#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dma/approx.hpp"
#include "dma/channel.hpp"
#include "dma/csv.hpp"
#include "../support/random.hpp"

using namespace dma;
using dma::testing::close;

TEST_SUITE("approx") {

TEST_CASE("squint phase vanishes at the centre and is negative above it")
{
    const auto cfg = default_scenario();
    const auto d = default_design();
    const auto grid = subcarrier_grid(cfg);
    CHECK(chi_o(grid.center_index, cfg, d) == 0.0);

    dma::testing::Random rnd(12);
    for (int i = 0; i < 500; ++i) {
        const double phi = rnd.uniform(0.0, kPi / 2.0 - 1e-6);
        const double delta = rnd.uniform(1e3, 3e9);
        REQUIRE(chi_o(15e9 + delta, 15e9, phi, d) < 0.0);
    }
}

TEST_CASE("squint phase equals channel phase differences")
{
    auto cfg = default_scenario();
    cfg.B = 2e9;
    const auto d = default_design();
    const auto grid = subcarrier_grid(cfg);
    const auto ch = effective_channel(cfg, d, grid);
    const std::size_t c = grid.center_index;
    for (std::size_t k : {std::size_t{0}, c, grid.size() - 1}) {
        const double diff = ch.phase(k, 1) - ch.phase(c, 1);
        CHECK(chi_o(k, cfg, d) == doctest::Approx(diff).epsilon(1e-12));
    }
}

TEST_CASE("frequency factor limits and nulls")
{
    CHECK(f_freq(0.0, 32) == 8.0);
    CHECK(f_freq(4.0 * kPi, 32) == 8.0);
    CHECK(f_freq(0.0, 7) == 7.0 / 4.0);
    for (int m = 1; m < 32; ++m)
        CHECK(f_freq(2.0 * kPi * m / 32.0, 32) < 1e-20);
    CHECK(f_freq(0.01, 32) == doctest::Approx(7.9320320246651528).epsilon(1e-13));
}

TEST_CASE("frequency factor equals the explicit array sum")
{
    dma::testing::Random rnd(31);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t N = rnd.integer(1, 256);
        const double chi = rnd.uniform(-kPi, kPi);
        const double closed = f_freq(chi, N);
        REQUIRE(closed <= static_cast<double>(N) / 4.0);
        REQUIRE(close(closed, f_freq_sum(chi, N), 1e-10, 1e-12));
    }
}

TEST_CASE("weight ratio")
{
    DmaDesign d = default_design();
    d.B_tune = 0.0;
    CHECK(weight_ratio(d) == 0.0);
    d.B_tune = 29e9;
    CHECK(weight_ratio(d) > 0.99);
    d.B_tune = d.gamma() / 4.0;
    CHECK(weight_ratio(d) == doctest::Approx(0.63908976192010006).epsilon(1e-12));
    CHECK(weight_ratio(d) == doctest::Approx(2.0 * std::atan(kPi / 2.0) / kPi).epsilon(1e-3));
    CHECK(fill_angle(d) == doctest::Approx(kPi * weight_ratio(d)).epsilon(1e-15));
}

TEST_CASE("weight fill factor")
{
    CHECK(w_fill(0.0) == 0.0);
    CHECK(w_fill(kPi) == 1.0);
    CHECK(w_fill(kPi / 2.0) == doctest::Approx(0.66963106982612844).epsilon(1e-14));
    double previous = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double v = w_fill(kPi * i / 1000.0);
        REQUIRE(v >= previous);
        previous = v;
    }
    CHECK_THROWS_AS(w_fill(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(w_fill(3.2), std::invalid_argument);
}

TEST_CASE("leakage penalty")
{
    CHECK(a_leak(1e-9) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a_leak(0.9) == doctest::Approx(0.90245325547629449).epsilon(1e-14));
    CHECK(a_leak(0.5) == doctest::Approx(0.99010934511892918).epsilon(1e-14));
    CHECK(a_leak(0.9) == doctest::Approx(0.9029).epsilon(5e-4 / 0.9029));
    double previous = 1.0;
    for (int i = 1; i < 1000; ++i) {
        const double v = a_leak(i / 1000.0);
        REQUIRE(v < previous);
        previous = v;
    }
    CHECK_THROWS_AS(a_leak(0.0), std::invalid_argument);
    CHECK_THROWS_AS(a_leak(1.0), std::invalid_argument);
}

TEST_CASE("finite-aperture leakage penalty")
{
    DmaDesign d = default_design();
    d.Lambda = 1e-12;
    CHECK(a_leak_exact(d) == doctest::Approx(1.0).epsilon(1e-12));

    d.N_slot = 2;
    d.Lambda = 0.7;
    const double q = std::exp(-leakage_constant(d) * d.d_x);
    CHECK(a_leak_exact(d) == doctest::Approx((1 + q) * (1 + q) / (2 * (1 + q * q))).epsilon(1e-14));

    d.N_slot = 32;
    d.Lambda = 0.9;
    CHECK(a_leak_exact(d) == doctest::Approx(0.89695054274022163).epsilon(1e-13));

    d.N_slot = 4096;
    const std::pair<double, double> frozen[] = {{0.1, 0.99976868381134938},
                                                {0.5, 0.99010457187109537},
                                                {0.9, 0.90241117635234452},
                                                {0.99, 0.71057090358416194}};
    for (const auto &[lambda, value] : frozen) {
        d.Lambda = lambda;
        CHECK(a_leak_exact(d) == doctest::Approx(value).epsilon(1e-12));
    }

    d.N_slot = 1;
    CHECK_THROWS_AS(a_leak_exact(d), std::invalid_argument);
}

TEST_CASE("finite-aperture penalty converges at first order")
{
    DmaDesign d = default_design();
    d.Lambda = 0.9;
    auto gap = [&](std::size_t N) {
        d.N_slot = N;
        return std::abs(a_leak_exact(d) - a_leak(d.Lambda));
    };
    for (std::size_t N : {256u, 512u, 1024u, 2048u})
        CHECK(gap(N) / gap(2 * N) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("approximation breakdown")
{
    const auto cfg = default_scenario();
    const auto d = default_design();
    const auto b = approx_breakdown(cfg, d);
    const auto grid = subcarrier_grid(cfg);
    REQUIRE(b.product.size() == cfg.K);
    CHECK(b.W_fill == w_fill(fill_angle(d)));
    CHECK(b.A_leak == a_leak(d.Lambda));
    for (std::size_t k = 0; k < cfg.K; ++k)
        CHECK(b.product[k] == b.F_freq[k] * b.W_fill * b.A_leak);
    CHECK(b.F_freq[grid.center_index] == 8.0);
    CHECK(approx_gain(grid.center_index, d, cfg) == 8.0 * b.W_fill * b.A_leak);

    DmaDesign ideal = d;
    ideal.B_tune = 29.9e9;
    ideal.Lambda = 1e-9;
    CHECK(approx_gain(grid.center_index, ideal, cfg) == doctest::Approx(8.0).epsilon(1e-3));

    DmaDesign fixed = d;
    fixed.B_tune = 0.0;
    CHECK(approx_gain(grid.center_index, fixed, cfg) == 0.0);
}

TEST_CASE("propagation lobe")
{
    CHECK(propagation_lobe(0.0, 32) == cplx{1.0, 0.0});
    CHECK(std::abs(propagation_lobe(1e-9, 32)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(propagation_lobe(2.0 * kPi / 32.0, 32)) < 1e-15);

    const auto d = default_design();
    const double lobe = std::abs(propagation_lobe(-20.0 * kPi / 180.0, 15e9, d));
    CHECK(lobe == doctest::Approx(0.022715222164601924).epsilon(1e-9));
    CHECK(lobe < 0.1);

    dma::testing::Random rnd(9);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t N = rnd.integer(1, 128);
        const double phi = rnd.uniform(-20.0, 20.0);
        cplx sum{0.0, 0.0};
        for (std::size_t n = 0; n < N; ++n)
            sum += std::polar(1.0, static_cast<double>(n) * phi);
        sum /= static_cast<double>(N);
        const cplx lobe_i = propagation_lobe(phi, N);
        REQUIRE(std::abs(lobe_i) <= 1.0 + 1e-15);
        REQUIRE(std::abs(lobe_i - sum) < 1e-12);
    }
}

TEST_CASE("Monte-Carlo fill oracle")
{
    const auto full = w_fill_oracle(kPi, 100000, 1);
    CHECK(std::abs(full.mean - 1.0) < 1e-3);

    const auto none = w_fill_oracle(0.0, 100000, 2);
    CHECK(std::abs(none.mean - w_fill(0.0)) <= 3.0 * none.std_error);

    const auto half = w_fill_oracle(kPi / 2.0, 200000, 3);
    CHECK(std::abs(half.mean - 0.6698) < 0.01);

    for (double xi : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        const auto est = w_fill_oracle(xi, 200000, 4);
        CHECK(est.std_error > 0.0);
        CHECK(std::abs(est.mean - w_fill(xi)) <= 3.0 * est.std_error);
    }

    const auto a = w_fill_oracle(1.0, 150000, 77);
    const auto b = w_fill_oracle(1.0, 150000, 77);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("breakdown csv")
{
    ScenarioConfig cfg;
    cfg.K = 8;
    const auto b = approx_breakdown(cfg, default_design());
    std::stringstream ss;
    write_breakdown_csv(ss, b);
    const auto table = csv::read(ss);
    CHECK(table.header == std::vector<std::string>{"k", "f_k", "F_freq", "W_fill", "A_leak", "product"});
    REQUIRE(table.rows.size() == 8);
    for (std::size_t k = 0; k < 8; ++k)
        CHECK(csv::parse_double(table.rows[k][5]) == b.product[k]);
}

}
