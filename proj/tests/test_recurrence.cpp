#include <catch2/catch_amalgamated.hpp>

#include "ulamkac/recurrence.hpp"

using namespace ulamkac;

namespace {

std::vector<std::int64_t> row(const std::vector<std::vector<std::int64_t>>& mat, int i) {
    return mat[i];
}

}  // namespace

TEST_CASE("coefficient matrices reproduce the order-3 system", "[recurrence]") {
    auto mats = build_coefficient_matrices(3);
    REQUIRE(mats.basis.size() == 4);
    // basis order: (3;{}), (2;[1]), (1;[2]), (1;[1,1])
    CHECK(row(mats.C1, 0) == std::vector<std::int64_t>{1, 0, 0, 0});
    CHECK(row(mats.C1, 1) == std::vector<std::int64_t>{1, 1, 0, 0});
    CHECK(row(mats.C1, 2) == std::vector<std::int64_t>{1, 0, 1, 0});
    CHECK(row(mats.C1, 3) == std::vector<std::int64_t>{1, 2, 0, 1});

    CHECK(row(mats.C2, 0) == std::vector<std::int64_t>{6, 3, 3, 0});
    CHECK(row(mats.C2, 1) == std::vector<std::int64_t>{2, 4, 0, 2});
    CHECK(row(mats.C2, 2) == std::vector<std::int64_t>{0, 0, 0, 0});
    CHECK(row(mats.C2, 3) == std::vector<std::int64_t>{0, 0, 0, 0});

    CHECK(row(mats.C3, 0) == std::vector<std::int64_t>{1, 0, 0, 0});
    CHECK(row(mats.C3, 1) == std::vector<std::int64_t>{1, 1, 1, 0});
    CHECK(row(mats.C3, 2) == std::vector<std::int64_t>{1, 1, 1, 0});
    CHECK(row(mats.C3, 3) == std::vector<std::int64_t>{1, 3, 0, 3});
}

TEST_CASE("coefficient matrices at m=1", "[recurrence]") {
    auto mats = build_coefficient_matrices(1);
    CHECK(mats.C1 == std::vector<std::vector<std::int64_t>>{{1}});
    CHECK(mats.C2 == std::vector<std::vector<std::int64_t>>{{0}});
    CHECK(mats.C3 == std::vector<std::vector<std::int64_t>>{{1}});
    CHECK_THROWS_AS(build_coefficient_matrices(0), std::invalid_argument);
}

TEST_CASE("coefficient matrix structure", "[recurrence]") {
    for (int m = 1; m <= 6; ++m) {
        auto mats = build_coefficient_matrices(m);
        const int d = mats.basis.size();
        const Int max_term = binomial(m, m / 2);
        for (int i = 0; i < d; ++i) {
            // C1 lower triangular with unit diagonal
            CHECK(mats.C1[i][i] == 1);
            for (int j = i + 1; j < d; ++j) CHECK(mats.C1[i][j] == 0);
            // row sums count position-subsets
            std::int64_t sum1 = 0, sum3 = 0;
            for (int j = 0; j < d; ++j) {
                sum1 += mats.C1[i][j];
                sum3 += mats.C3[i][j];
                const int li = mats.basis.part_length(i);
                const int lj = mats.basis.part_length(j);
                if (mats.C2[i][j] != 0) CHECK(li - lj >= -1);
                if (mats.C3[i][j] != 0) CHECK(li - lj >= 0);
            }
            const int l = mats.basis.part_length(i);
            CHECK(sum1 == (std::int64_t{1} << l));
            CHECK(sum3 == (std::int64_t{1} << (l + 1)) - 1);
            // every single contribution to C2 is a binomial bounded by the
            // central one
            const int q = mats.basis.at(i).q;
            for (int beta = 1; beta <= q - 1; ++beta) {
                CHECK(binomial(q, beta) <= max_term);
            }
        }
    }
}

TEST_CASE("initial state and stepping", "[recurrence]") {
    auto st3 = initial_state(3);
    CHECK(st3.n == 0);
    CHECK(st3.h == std::vector<Rat>{Rat(1), Rat(0), Rat(0), Rat(0)});
    CHECK(st3.s == std::vector<Rat>(4, Rat(0)));
    CHECK(initial_state(1).h == std::vector<Rat>{Rat(1)});

    auto mats1 = build_coefficient_matrices(1);
    auto st = initial_state(1);
    st = step(st, mats1);
    CHECK(st.h[0] == Rat(2));
    st = step(st, mats1);
    CHECK(st.h[0] == Rat(7, 2));

    auto mats3 = build_coefficient_matrices(3);
    auto s3 = initial_state(3);
    for (int k = 0; k < 3; ++k) s3 = step(s3, mats3);
    CHECK(s3.h[0] == Rat(629, 3));
}

TEST_CASE("exact moment tables", "[recurrence]") {
    auto t = exact_moments(3, 6);
    const std::vector<Rat> expect = {Rat(1),         Rat(8),       Rat(91, 2), Rat(629, 3),
                                     Rat(20003, 24), Rat(8893, 3), Rat(6953959, 720)};
    REQUIRE(t.rows.size() == 7);
    for (int n = 0; n <= 6; ++n) {
        CHECK(t.rows[n].first == n);
        CHECK(t.rows[n].second == expect[n]);
    }

    for (int m = 1; m <= 6; ++m) {
        auto tm = exact_moments(m, 1);
        Rat two_m(Int(1) << m);
        CHECK(tm.rows[1].second == two_m);
    }
    CHECK(exact_moments(2, 1).rows[1].second == Rat(4));

    // values non-decreasing, coordinates nonnegative, denominators divide n!
    auto mats = build_coefficient_matrices(3);
    auto st = initial_state(3);
    Rat prev(0);
    for (int n = 0; n <= 12; ++n) {
        for (const auto& v : st.h) {
            CHECK(v >= 0);
            Int nfac = factorial(n);
            CHECK(nfac % v.get_den() == 0);
        }
        CHECK(st.h[0] >= prev);
        prev = st.h[0];
        st = step(st, mats);
    }

    CHECK_THROWS_AS(exact_moments(3, 1000, /*budget=*/100), BudgetError);
}

TEST_CASE("laguerre closed form matches the engine", "[recurrence]") {
    CHECK(laguerre_first_moment(0) == Rat(1));
    CHECK(laguerre_first_moment(2) == Rat(7, 2));
    auto t = exact_moments(1, 10);
    CHECK(laguerre_first_moment(10) == t.rows[10].second);
    for (int n = 0; n <= 10; ++n) CHECK(laguerre_first_moment(n) == t.rows[n].second);
}

TEST_CASE("hardcoded second-moment system agrees with the engine", "[recurrence]") {
    auto t = hardcoded_m2_moments(40);
    CHECK(t.rows[0].second == Rat(1));
    CHECK(t.rows[1].second == Rat(4));
    CHECK(t.rows[2].second == Rat(25, 2));
    auto engine = exact_moments(2, 40);
    for (int n = 0; n <= 40; ++n) CHECK(t.rows[n].second == engine.rows[n].second);
}

TEST_CASE("scalar third-moment recurrence agrees with the engine", "[recurrence]") {
    auto t = scalar_m3_recurrence(20);
    auto engine = exact_moments(3, 20);
    for (int n = 0; n <= 20; ++n) CHECK(t.rows[n].second == engine.rows[n].second);
    CHECK(t.rows[1].second == Rat(8));
    CHECK(t.rows[7].second == Rat(9229727, 315));
    CHECK_THROWS_AS(scalar_m3_recurrence(3), std::invalid_argument);
}

TEST_CASE("second-moment ODE power series identity", "[recurrence]") {
    CHECK(!m2_ode_first_nonzero(60).has_value());
}
