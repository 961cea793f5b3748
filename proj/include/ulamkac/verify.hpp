#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ulamkac/gf_pipeline.hpp"
#include "ulamkac/m3_series.hpp"
#include "ulamkac/pathspace.hpp"
#include "ulamkac/recurrence.hpp"
#include "ulamkac/spectral.hpp"

namespace ulamkac {

/// One verification check: a named claim with the expected and observed
/// sides rendered for the report, a verdict, and its wall time.
struct CheckResult {
    std::string name;
    std::string expected;
    std::string observed;
    bool pass = false;
    double seconds = 0;
};

enum class VerifyLevel { fast, full };

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

template <typename Fn>
CheckResult timed_check(const std::string& name, double time_limit_s, Fn&& body) {
    CheckResult r;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.observed = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds >= time_limit_s) {
        r.pass = false;
        r.observed += " [exceeded " + fmt(time_limit_s) + " s budget: " + fmt(r.seconds) + " s]";
    }
    return r;
}

}  // namespace detail

/// The thirteen acceptance checks.  Level fast skips the n=10^3 series
/// (check 9) and restricts the constants sweep (check 10) to m <= 5.
inline std::vector<CheckResult> run_acceptance_checks(VerifyLevel level) {
    using detail::fmt;
    using detail::timed_check;
    std::vector<CheckResult> out;

    out.push_back(timed_check("AC-01-first-moment-constant", 1.0, [](CheckResult& r) {
        auto res = moment_constant(1, 1e-12);
        r.expected = "lambda_1 = 1 and c_1 = 2, both within 1e-12";
        r.observed = "lambda = " + fmt(res.lambda) + ", c = " + fmt(res.c);
        r.pass = std::abs(res.lambda - 1.0) <= 1e-12 && std::abs(res.c - 2.0) <= 1e-12;
    }));

    out.push_back(timed_check("AC-02-second-moment-constant", 1.0, [](CheckResult& r) {
        auto res = moment_constant(2, 1e-13);
        const double lambda = (5.0 + std::sqrt(17.0)) / 2.0;
        const double c = std::sqrt(2.0 * (5.0 + std::sqrt(17.0)));
        r.expected = "lambda_2 = (5+sqrt(17))/2 within 1e-9, c_2 within 1e-6";
        r.observed = "lambda = " + fmt(res.lambda) + ", c = " + fmt(res.c);
        r.pass = std::abs(res.lambda - lambda) <= 1e-9 && std::abs(res.c - c) <= 1e-6;
    }));

    out.push_back(timed_check("AC-03-third-moment-constant", 1.0, [](CheckResult& r) {
        auto res = moment_constant(3, 1e-13);
        r.expected = "lambda_3 = 11.979293127704 within 1e-9, c_3 = 6.9222 within 1e-4";
        r.observed = "lambda = " + fmt(res.lambda) + ", c = " + fmt(res.c);
        r.pass = std::abs(res.lambda - 11.979293127704) <= 1e-9 && std::abs(res.c - 6.9222) <= 1e-4;
    }));

    out.push_back(timed_check("AC-04-order-four-leading-matrix", 5.0, [](CheckResult& r) {
        const std::vector<std::vector<int>> printed = {
            {1, 4, 6, 4, 0, 0, 0},      {1, 5, 6, 5, 3, 3, 0},     {1, 4, 8, 4, 0, 2, 0},
            {1, 5, 6, 5, 0, 0, 0},      {2, 10, 12, 10, 7, 8, 2},  {2, 9, 14, 9, 4, 7, 0},
            {6, 30, 36, 30, 21, 24, 10}};
        auto dec = decompose(4);
        bool equal = dec.Ms[0].size() == printed.size();
        for (std::size_t i = 0; equal && i < printed.size(); ++i) {
            for (std::size_t j = 0; equal && j < printed[i].size(); ++j) {
                equal = dec.Ms[0][i][j] == printed[i][j];
            }
        }
        r.expected = "decompose(4).Ms[0] equals the published 7x7 integer matrix";
        r.observed = equal ? "entrywise equal" : "mismatch";
        r.pass = equal;
    }));

    out.push_back(timed_check("AC-05-engine-vs-enumeration", 30.0, [](CheckResult& r) {
        bool equal = true;
        std::string first_bad;
        for (int m = 1; m <= 4 && equal; ++m) {
            auto table = exact_moments(m, 8);
            for (int n = 0; n <= 8 && equal; ++n) {
                if (exact_moment_oracle(m, n) != table.rows[n].second) {
                    equal = false;
                    first_bad = "m=" + std::to_string(m) + ", n=" + std::to_string(n);
                }
            }
        }
        r.expected = "exact rational equality for all m in 1..4, n in 0..8 (40320 paths)";
        r.observed = equal ? "all equal" : "first mismatch at " + first_bad;
        r.pass = equal;
    }));

    out.push_back(timed_check("AC-06-third-moment-values", 1.0, [](CheckResult& r) {
        const std::vector<Rat> printed = {Rat(1),         Rat(8),       Rat(91, 2), Rat(629, 3),
                                          Rat(20003, 24), Rat(8893, 3), Rat(6953959, 720)};
        auto table = exact_moments(3, 6);
        bool equal = true;
        for (int n = 0; n <= 6; ++n) equal = equal && table.rows[n].second == printed[n];
        r.expected = "1, 8, 91/2, 629/3, 20003/24, 8893/3, 6953959/720";
        std::ostringstream os;
        for (int n = 0; n <= 6; ++n) os << (n ? ", " : "") << rat_string(table.rows[n].second);
        r.observed = os.str();
        r.pass = equal;
    }));

    out.push_back(timed_check("AC-07-laguerre-identity", 5.0, [](CheckResult& r) {
        auto table = exact_moments(1, 200);
        bool equal = true;
        int first_bad = -1;
        for (int n = 0; n <= 200; ++n) {
            if (laguerre_first_moment(n) != table.rows[n].second) {
                equal = false;
                first_bad = n;
                break;
            }
        }
        r.expected = "engine first moments equal sum binom(n,l)/l! for n <= 200";
        r.observed = equal ? "all 201 values equal" : "first mismatch at n=" + std::to_string(first_bad);
        r.pass = equal;
    }));

    out.push_back(timed_check("AC-08-second-moment-ode", 10.0, [](CheckResult& r) {
        auto bad = m2_ode_first_nonzero(200);
        r.expected = "series coefficients 0..196 of the ODE residual vanish exactly";
        r.observed = bad ? "first nonzero at " + std::to_string(*bad) : "all vanish";
        r.pass = !bad.has_value();
    }));

    if (level == VerifyLevel::full) {
        out.push_back(timed_check("AC-09-slope-reproduction", 30.0, [](CheckResult& r) {
            auto fit = m3_sqrt_slope(900, 1000);
            auto far_fit = m3_sqrt_slope(9000, 10000, 192);
            const double c3 = moment_constant(3, 1e-13).c;
            const bool near_ok = std::abs(fit.slope - 6.83) <= 0.03;
            const bool far_ok = far_fit.slope > fit.slope && far_fit.slope < c3 + 1e-3;
            r.expected = "slope over [900,1000] = 6.83 +/- 0.03; slope over [9000,10000] in (that, c_3 + 1e-3)";
            r.observed = "slopes " + fmt(fit.slope) + " and " + fmt(far_fit.slope) + ", c_3 = " + fmt(c3);
            r.pass = near_ok && far_ok;
        }));
    }

    const int m_sweep = level == VerifyLevel::full ? 8 : 5;
    out.push_back(timed_check("AC-10-bounds-and-monotonicity", 120.0, [m_sweep](CheckResult& r) {
        bool ok = true;
        std::ostringstream os;
        double prev_c = 0;
        for (int m = 1; m <= m_sweep; ++m) {
            auto res = moment_constant(m, 1e-12);
            const double count = static_cast<double>(res.M0.size());
            const bool jensen = res.c >= 2.0 * m - 1e-9;
            const bool increasing = res.c > prev_c;
            const bool count_bound = count <= std::exp(3.0 * std::sqrt(static_cast<double>(m)));
            ok = ok && jensen && increasing && count_bound;
            os << (m > 1 ? "; " : "") << "c_" << m << " = " << fmt(res.c);
            prev_c = res.c;
        }
        r.expected = "c_m >= 2m, strictly increasing, basis count <= e^{3 sqrt m}, m <= " +
                     std::to_string(m_sweep);
        r.observed = os.str();
        r.pass = ok;
    }));

    out.push_back(timed_check("AC-11-step-three-distribution", 1.0, [](CheckResult& r) {
        auto dist = enumerate_distribution(3);
        const std::map<std::uint64_t, Rat> expected = {
            {4, Rat(1, 6)}, {5, Rat(1, 3)}, {6, Rat(1, 3)}, {8, Rat(1, 6)}};
        r.expected = "pmf {4:1/6, 5:1/3, 6:1/3, 8:1/6}";
        std::ostringstream os;
        for (const auto& [v, p] : dist.pmf) os << v << ":" << rat_string(p) << " ";
        r.observed = os.str();
        r.pass = dist.pmf == expected;
    }));

    out.push_back(timed_check("AC-12-monte-carlo-consistency", 30.0, [](CheckResult& r) {
        SimConfig cfg;
        cfg.n_max = 30;
        cfg.samples = 100'000;
        cfg.seed = 42;
        cfg.moment_orders = {1};
        auto sim = simulate(cfg);
        const auto& row = sim.rows.back();
        const double exact = exact_moments(1, 30).rows[30].second.get_d();
        const double deviation = std::abs(row.mean.get_d() - exact);
        r.expected = "sample mean of X_30 within 5 standard errors of the exact value";
        r.observed = "|mean - exact| = " + fmt(deviation) + ", 5 SE = " + fmt(5.0 * row.std_error);
        r.pass = deviation <= 5.0 * row.std_error;
    }));

    out.push_back(timed_check("AC-13-inverse-structure", 60.0, [](CheckResult& r) {
        bool ok = true;
        std::string detail_msg = "all hold";
        for (int m = 1; m <= 5 && ok; ++m) {
            auto mats = build_coefficient_matrices(m);
            auto q = build_Q(mats);
            auto qinv = invert_triangular(q);
            if (!(q * qinv == LaurentMatrix::identity(q.dim()))) {
                ok = false;
                detail_msg = "Q Q^{-1} != I at m=" + std::to_string(m);
                break;
            }
            for (int i = 0; i < q.dim() && ok; ++i) {
                for (int j = 0; j < q.dim() && ok; ++j) {
                    if (q.at(i, j).is_zero() != qinv.at(i, j).is_zero()) {
                        ok = false;
                        detail_msg = "zero-pattern mismatch";
                    } else if (!qinv.at(i, j).is_zero()) {
                        const int li = mats.basis.part_length(i);
                        const int lj = mats.basis.part_length(j);
                        if (qinv.at(i, j).min_exp() != -(li - lj + 1)) {
                            ok = false;
                            detail_msg = "leading exponent mismatch";
                        }
                        for (const Rat& z0 : {Rat(0), Rat(1, 7), Rat(1, 2), Rat(9, 10)}) {
                            if (qinv.at(i, j).evaluate(Rat(1) - z0) < 0) {
                                ok = false;
                                detail_msg = "negative value on [0,1)";
                            }
                        }
                    }
                }
            }
        }
        r.expected = "zero pattern, positivity on [0,1), exact leading exponents, Q Q^{-1} = I, m <= 5";
        r.observed = detail_msg;
        r.pass = ok;
    }));

    return out;
}

}  // namespace ulamkac
