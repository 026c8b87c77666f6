#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "chamfer/closed_forms.hpp"
#include "test_util.hpp"

using namespace chamfer;
using testutil::golden_min;
using testutil::rel_diff;

namespace {

// The explicit quotients as printed, without the cancellation-safe
// rewrites used by the library.  Good to ~1e-7 relative for p <= 64.
double error_b_printed(int p) {
    const double s = std::sqrt(double(p) * p + 1.0);
    return (double(p) * p + 2.0 - p * s - 2.0 * std::sqrt(double(p) * p + 1.0 - p * s)) /
           (double(p) * p);
}

double error_c_printed(int p) {
    const double s = std::sqrt(double(p) * p + 1.0);
    const double q = std::sqrt(2.0 * p * p + 2.0 - 2.0 * p * s);
    return (q - 1.0) / (q + 1.0);
}

double optimal_c_printed(int p) {
    const double s = std::sqrt(double(p) * p + 1.0);
    return (p * s + 2.0 * std::sqrt(double(p) * p + 1.0 - p * s) - 2.0) / (double(p) * p);
}

double grid_max_abs_deviation(int p, double c, int q) {
    if (q == p) return std::abs(mix_deviation(p, c, q, 0.0));
    double best = 0.0;
    for (int i = 0; i <= 4096; ++i)
        best = std::max(best, std::abs(mix_deviation(p, c, q, i / 4096.0)));
    return best;
}

} // namespace

TEST_CASE("printed error constants for p = 1..3") {
    const double tol = 5e-5;
    CHECK(error_b(1) == Catch::Approx(0.0551).margin(tol));
    CHECK(error_b(2) == Catch::Approx(0.0187).margin(tol));
    CHECK(error_b(3) == Catch::Approx(0.0089).margin(tol));
    CHECK(error_c(1) == Catch::Approx(0.0396).margin(tol));
    CHECK(error_c(2) == Catch::Approx(0.0136).margin(tol));
    CHECK(error_c(3) == Catch::Approx(0.0065).margin(tol));
    CHECK(error_d(1) == Catch::Approx(0.0824).margin(tol));
    CHECK(error_d(2) == Catch::Approx(0.0275).margin(tol));
    CHECK(error_d(3) == Catch::Approx(0.0131).margin(tol));
}

TEST_CASE("optimal_c values") {
    CHECK(optimal_c(1) == Catch::Approx(0.94494).margin(1e-5));
    CHECK(optimal_c(2) == Catch::Approx(0.9813).margin(5e-5));
    for (int p = 1; p <= 64; ++p) {
        const double c = optimal_c(p);
        CHECK(c > c_threshold(p));
        CHECK(c < 1.0);
    }
}

TEST_CASE("identities hold to 1e-12 relative for p = 1..64") {
    for (int p = 1; p <= 64; ++p) {
        CHECK(rel_diff(error_c(p), error_d(p) / (2.0 + error_d(p))) < 1e-12);
        CHECK(error_b(p) == 1.0 - optimal_c(p)); // exact by construction
        // Ordering of the three optima.
        CHECK(error_c(p) < error_b(p));
        CHECK(error_b(p) < error_d(p));
    }
}

TEST_CASE("library forms agree with the printed quotients") {
    for (int p = 1; p <= 64; ++p) {
        CHECK(rel_diff(error_b(p), error_b_printed(p)) < 1e-7);
        CHECK(rel_diff(error_c(p), error_c_printed(p)) < 1e-7);
        CHECK(rel_diff(optimal_c(p), optimal_c_printed(p)) < 1e-12);
    }
    // At small p the printed quotients are accurate enough for a far
    // tighter comparison.
    for (int p = 1; p <= 4; ++p) {
        CHECK(rel_diff(error_b(p), error_b_printed(p)) < 1e-11);
        CHECK(rel_diff(error_c(p), error_c_printed(p)) < 1e-11);
    }
}

TEST_CASE("asymptotic coefficients at p = 1000") {
    const double p2 = 1000.0 * 1000.0;
    CHECK(std::abs(p2 * error_b(1000) - (1.5 - std::sqrt(2.0))) < 1e-4);
    CHECK(std::abs(p2 * error_c(1000) - 1.0 / 16.0) < 1e-4);
    CHECK(std::abs(p2 * error_d(1000) - 0.125) < 1e-4);
}

TEST_CASE("optimal_c solves the crossing equation f(c) = g(c)") {
    for (int p = 1; p <= 64; ++p) {
        const double c = optimal_c(p);
        const double y = c * std::hypot(double(p), 1.0) - p;
        const double g = y * y / (1.0 + std::sqrt(1.0 + y * y));
        CHECK(std::abs((1.0 - c) - g) < 1e-12);
    }
}

TEST_CASE("restricted_error branches and domain") {
    // At c = 1 the second branch alone remains and equals error_d.
    CHECK(std::abs(restricted_error(2, 1.0) - error_d(2)) < 1e-14);
    CHECK(std::abs(restricted_error(3, 1.0) - error_d(3)) < 1e-14);
    // At the optimal c both branches meet at error_b.
    const double c2 = optimal_c(2);
    CHECK(std::abs(restricted_error(2, c2) - error_b(2)) < 1e-13);
    const double y = c2 * std::hypot(2.0, 1.0) - 2.0;
    const double g = y * y / (1.0 + std::sqrt(1.0 + y * y));
    CHECK(std::abs((1.0 - c2) - g) < 1e-13);

    CHECK_THROWS_AS(restricted_error(1, 0.70), CBelowThreshold);
    CHECK_THROWS_AS(restricted_error(2, 1.5), BadRange);
    CHECK_THROWS_AS(restricted_error(0, 0.9), BadRange);
}

TEST_CASE("golden-section scan recovers optimal_c and error_b (p = 1..8)") {
    for (int p = 1; p <= 8; ++p) {
        const double lo = c_threshold(p) + 1e-9;
        const auto [cmin, fmin] =
            golden_min([p](double c) { return restricted_error(p, c); }, lo, 1.0);
        CHECK(std::abs(cmin - optimal_c(p)) < 1e-8);
        CHECK(std::abs(fmin - error_b(p)) < 1e-10);
    }
}

TEST_CASE("mix_deviation endpoints") {
    for (int p : {1, 2, 3, 5}) {
        for (double c : {optimal_c(p), 1.0}) {
            CHECK(mix_deviation(p, c, 0, 0.0) == 0.0);
            for (int q = 1; q < p; ++q) {
                CHECK(mix_deviation(p, c, q, 0.0) == Catch::Approx(c - 1.0).margin(1e-15));
                CHECK(mix_deviation(p, c, q, 1.0) == Catch::Approx(c - 1.0).margin(1e-15));
            }
        }
    }
    CHECK_THROWS_AS(mix_deviation(2, 1.0, 3, 0.5), BadRange);
    CHECK_THROWS_AS(mix_deviation(2, 1.0, -1, 0.5), BadRange);
    CHECK_THROWS_AS(mix_deviation(2, 1.0, 1, 1.5), BadRange);
}

TEST_CASE("mix_deviation peak matches the mode-D closed form") {
    const double t0 = mix_peak(2, 1.0, 0);
    CHECK(std::abs(mix_deviation(2, 1.0, 0, t0) - error_d(2)) < 1e-12);
}

TEST_CASE("mix_peak closed forms") {
    CHECK(mix_peak(1, 1.0, 0) == Catch::Approx(std::sqrt(2.0) - 1.0).margin(1e-15));
    CHECK(mix_peak(2, 1.0, 0) == Catch::Approx(2.0 * (std::sqrt(5.0) - 2.0)).margin(1e-15));
    CHECK_THROWS_AS(mix_peak(2, 1.0, 2), BadRange);   // q must be < p
    CHECK_THROWS_AS(mix_peak(2, 0.5, 0), CBelowThreshold);
}

TEST_CASE("mix_peak is the interior maximizer") {
    for (int p : {2, 3, 5}) {
        for (double c : {optimal_c(p), 0.99, 1.0}) {
            if (!(c > c_threshold(p))) continue;
            for (int q = 0; q < p; ++q) {
                const double ts = mix_peak(p, c, q);
                REQUIRE(ts >= 0.0);
                REQUIRE(ts <= 1.0);
                const double peak = mix_deviation(p, c, q, ts);
                double prev = mix_deviation(p, c, q, 0.0);
                for (int i = 1; i <= 100; ++i) {
                    const double t = i / 100.0;
                    const double h = mix_deviation(p, c, q, t);
                    CHECK(peak >= h - 1e-12);
                    // Increasing before the peak, decreasing after it.
                    if (t <= ts)
                        CHECK(h >= prev - 1e-12);
                    else if ((i - 1) / 100.0 >= ts)
                        CHECK(h <= prev + 1e-12);
                    prev = h;
                }
            }
        }
    }
}

TEST_CASE("sector_error special cases") {
    for (int p : {1, 2, 3}) {
        for (double c : {optimal_c(p), 1.0}) {
            CHECK(sector_error(p, c, p) == 1.0 - c);
        }
    }
    CHECK(sector_error(2, 1.0, 0) == Catch::Approx(0.0275).margin(5e-5));
    CHECK(std::abs(sector_error(2, 1.0, 0) - error_d(2)) < 1e-14);
    CHECK(sector_error(3, optimal_c(3), 1) <= sector_error(3, optimal_c(3), 0));
    CHECK_THROWS_AS(sector_error(2, 1.0, 5), BadRange);
}

TEST_CASE("dense t-grid maxima match sector_error within 1e-6") {
    for (int p : {1, 2, 3}) {
        for (double c : {optimal_c(p), 1.0}) {
            for (int q = 0; q <= p; ++q) {
                const double oracle = grid_max_abs_deviation(p, c, q);
                CHECK(std::abs(oracle - sector_error(p, c, q)) < 1e-6);
            }
        }
    }
}

TEST_CASE("sector_error decreases from sector 1 upward and is dominated by sector 0") {
    for (int p = 2; p <= 8; ++p) {
        const double lo = c_threshold(p);
        for (int i = 1; i <= 20; ++i) {
            const double c = lo + (1.0 - lo) * i / 20.0;
            const double h0 = sector_error(p, c, 0);
            const double h1 = sector_error(p, c, 1);
            CHECK(h1 <= h0 + 1e-15);
            for (int q = 2; q <= p; ++q) CHECK(sector_error(p, c, q) <= h1 + 1e-15);
        }
    }
}

TEST_CASE("sector-1 peak never exceeds the sector-0 peak (inequality re-check)") {
    for (int p = 1; p <= 8; ++p) {
        const double lo = c_threshold(p);
        const double a = (double(p) * p + 1.0) * (double(p) * p + 4.0);
        const double lhs_factor = std::sqrt(2.0 / (1.0 + std::sqrt(1.0 - double(p) * p / a)));
        for (int i = 1; i <= 1000; ++i) {
            const double c = lo + (1.0 - lo) * i / 1000.0;
            const double s = std::hypot(double(p), 1.0);
            const double rhs = std::sqrt(1.0 + c * c + double(p) * p + c * c * p * p -
                                         2.0 * c * p * s);
            CHECK(c * lhs_factor <= rhs + 1e-12);
        }
    }
}

TEST_CASE("feasible region constants for p = 2") {
    const auto f = feasible_region(2);
    CHECK(f.w1 == Catch::Approx(2.1943).margin(5e-5));
    CHECK(f.w2_min == Catch::Approx(2.7756).margin(5e-5));
    CHECK(f.w2_max == Catch::Approx(2.8777).margin(5e-5));
    CHECK(f.w2_min < f.w2_max);
    // The forced w1 equals optimal_c(2) * sqrt(5).
    CHECK(rel_diff(f.w1, optimal_c(2) * std::sqrt(5.0)) < 1e-12);
    CHECK_THROWS_AS(f.w3_max(2.8), UnsupportedP);
}

TEST_CASE("feasible region constants for p = 3") {
    const auto f = feasible_region(3);
    CHECK(f.w1 == Catch::Approx(3.1340).margin(5e-5));
    CHECK(f.w2_min == Catch::Approx(3.5733).margin(5e-5));
    CHECK(f.w2_max == Catch::Approx(3.5944).margin(5e-5));
    CHECK(f.w3_min == Catch::Approx(4.2047).margin(5e-5));
    CHECK(rel_diff(f.w1, optimal_c(3) * std::sqrt(10.0)) < 1e-12);
    // w3_max stays inside the stated bracket across the whole w2 interval.
    for (int i = 0; i < 100; ++i) {
        const double w2 = f.w2_min + (f.w2_max - f.w2_min) * i / 99.0;
        const double r = f.w3_max(w2);
        CHECK(r > 4.2766);
        CHECK(r < 4.2804);
        CHECK(f.w3_min < r);
    }
}

TEST_CASE("feasible region rejects other p") {
    CHECK_THROWS_AS(feasible_region(1), UnsupportedP);
    CHECK_THROWS_AS(feasible_region(4), UnsupportedP);
}

TEST_CASE("is_optimal_weights") {
    const auto f2 = feasible_region(2);
    const std::vector<double> mid{f2.w1, (f2.w2_min + f2.w2_max) / 2.0};
    CHECK(is_optimal_weights(2, mid));
    const std::vector<double> high{f2.w1, f2.w2_max + 0.01};
    CHECK_FALSE(is_optimal_weights(2, high));
    const std::vector<double> wrong_w1{2.0, 2.8};
    CHECK_FALSE(is_optimal_weights(2, wrong_w1));

    const auto f3 = feasible_region(3);
    const std::vector<double> boundary{f3.w1, f3.w2_min, f3.w3_min};
    CHECK(is_optimal_weights(3, boundary));
    const std::vector<double> inner{f3.w1, 3.58, 4.25};
    CHECK(is_optimal_weights(3, inner));
    const std::vector<double> w3_high{f3.w1, 3.58, 4.2810};
    CHECK_FALSE(is_optimal_weights(3, w3_high));

    const std::vector<double> two{1.0, 2.0};
    CHECK_THROWS_AS(is_optimal_weights(4, two), UnsupportedP);
    CHECK_THROWS_AS(is_optimal_weights(3, two), BadRange); // wrong count
}
