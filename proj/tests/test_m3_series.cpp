#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ulamkac/m3_series.hpp"

using namespace ulamkac;

TEST_CASE("big-float series matches the exact series", "[m3series]") {
    auto series = m3_log_series(1000, 192);
    REQUIRE(series.ln.size() == 1001);

    CHECK(series.ln[6] == Catch::Approx(std::log(6953959.0 / 720.0)).epsilon(1e-12));

    auto exact = scalar_m3_recurrence(1000);
    // ten significant digits at n = 1000
    const double ln_exact = log_value(exact.rows[1000].second, 256);
    CHECK(std::abs(series.ln[1000] - ln_exact) / std::abs(ln_exact) < 1e-10);

    for (std::size_t n = 1; n < series.ln.size(); ++n) {
        CHECK(series.ln[n] > series.ln[n - 1]);
    }

    CHECK_THROWS_AS(m3_log_series(50), std::invalid_argument);
    CHECK_THROWS_AS(m3_log_series(500, 32), std::invalid_argument);
}

TEST_CASE("least squares on a synthetic line", "[m3series]") {
    std::vector<double> x, y;
    for (int i = 0; i < 50; ++i) {
        x.push_back(0.5 * i);
        y.push_back(3.25 * x.back() - 1.5);
    }
    auto fit = least_squares(x, y);
    CHECK(fit.slope == Catch::Approx(3.25).margin(1e-12));
    CHECK(fit.intercept == Catch::Approx(-1.5).margin(1e-10));
    CHECK(fit.residual_rms < 1e-10);
    CHECK_THROWS_AS(least_squares({1.0}, {2.0}), std::invalid_argument);
}

TEST_CASE("sqrt-slope fit windows", "[m3series]") {
    auto fit = m3_sqrt_slope(900, 1000);
    CHECK(fit.slope == Catch::Approx(6.83).margin(0.03));

    auto early = m3_sqrt_slope(10, 20);
    CHECK(early.slope < 6.5);  // far below the limit this early in n

    CHECK_THROWS_AS(m3_sqrt_slope(100, 100), std::invalid_argument);
    CHECK_THROWS_AS(m3_sqrt_slope(-1, 10), std::invalid_argument);
}
