#include "oracles.hpp"

#include "cfnl/equidist.hpp"
#include "cfnl/error.hpp"

#include <doctest.h>

#include <random>

using namespace cfnl;
using namespace cfnl::equidist;

namespace {

std::vector<double> midpoints(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (2.0 * i + 1.0) / (2.0 * n);
    return v;
}

std::vector<double> random_points(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform01(rng);
    return v;
}

}  // namespace

TEST_CASE("star discrepancy") {
    CHECK(star_discrepancy(UnitSequence({0.5})) == doctest::Approx(0.5));
    CHECK(star_discrepancy(UnitSequence({0.0})) == doctest::Approx(1.0));
    CHECK(star_discrepancy(UnitSequence(midpoints(8))) == doctest::Approx(1.0 / 16));
    CHECK(oracle::grid_star_discrepancy(midpoints(8), 1.0 / 64) == doctest::Approx(1.0 / 16));
    CHECK_THROWS_AS(star_discrepancy(UnitSequence(std::vector<double>{})), Error);
    CHECK_THROWS_AS(UnitSequence(std::vector<double>{1.0}), Error);
    CHECK_THROWS_AS(UnitSequence(std::vector<double>{-0.1}), Error);
    CHECK_THROWS_AS(UnitSequence(std::vector<double>{std::nan("")}), Error);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + uniform_index(rng, 512);
        const auto pts = random_points(rng, n);
        const UnitSequence s(pts);
        const double d = star_discrepancy(s);
        const double grid = oracle::grid_star_discrepancy(pts, 1.0 / (8.0 * n));
        REQUIRE(std::abs(d - grid) <= 1.0 / (8.0 * n) + 1e-12);
        REQUIRE(d >= 0.5 / n);
        REQUIRE(d <= 1.0);
        REQUIRE(position_deviation(s) <= d + 1e-15);
    }
}

TEST_CASE("ETK evaluations") {
    const UnitSequence zeros(std::vector<double>(10, 0.0));
    const auto e0 = etk_bound(zeros, 1, 2.5);
    CHECK(e0.printed_form == doctest::Approx(2 * 2.5));
    const UnitSequence mid(midpoints(16));
    CHECK(weyl_sums(mid, 1)[0] < 1e-12);
    CHECK(etk_bound(mid, 1, 1.0).printed_form == doctest::Approx(1.0));
    CHECK_THROWS_AS(etk_bound(mid, 0, 1.0), Error);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const UnitSequence s(random_points(rng, 256));
        const double d = star_discrepancy(s);
        for (int H : {1, 2, 4, 8, 32}) REQUIRE(etk_bound(s, H, 1.0).rigorous >= d);
    }
    const std::vector<int> Hs{1, 3};
    const auto rep = discrepancy_report(mid, Hs, 1.0);
    CHECK(rep.n_points == 16);
    CHECK(rep.etk.size() == 2);
    CHECK(rep.star_d == doctest::Approx(1.0 / 32));
}

TEST_CASE("position deviation") {
    CHECK(position_deviation(UnitSequence(midpoints(10))) == doctest::Approx(1.0 / 20));
    CHECK(position_deviation(UnitSequence({0.9})) == doctest::Approx(0.1));
    CHECK(star_discrepancy(UnitSequence({0.9})) == doctest::Approx(0.9));
}

TEST_CASE("Gauss argument sequences") {
    double worst = 0;
    for (unsigned n = 8; n <= 16; ++n) {
        const auto f = gf2n::build_field(n);
        charsums::CharContext c(f, std::make_shared<const gf2n::DlogTables>(gf2n::compute_dlog_tables(f)));
        const auto g = charsums::gauss_table(c);
        const auto s = gauss_arg_sequence(c, g, 0);
        CHECK(s.size() == f.q - 2);
        const double d = star_discrepancy(s);
        if (n == 8) CHECK(d < 0.2);
        worst = std::max(worst, d * std::pow(static_cast<double>(f.q), 0.25));
        CHECK_THROWS_AS(gauss_arg_sequence(c, g, f.q - 1), Error);
    }
    CHECK(worst <= 3.0);
}

TEST_CASE("helpers") {
    CHECK(quarter_power_h(256) == 4);
    CHECK(quarter_power_h(4) == 1);
    CHECK(quarter_power_h(65536) == 16);
    const std::vector<double> x{1, 10, 100}, y{1, 0.1, 0.01};
    CHECK(log_log_slope(x, y) == doctest::Approx(-1.0));
    CHECK(angle_to_unit(0.0) == 0.0);
    CHECK(angle_to_unit(-pi / 2) == doctest::Approx(0.75));
    CHECK(angle_to_unit(pi) == doctest::Approx(0.5));
}
