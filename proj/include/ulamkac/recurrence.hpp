#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ulamkac/basis.hpp"
#include "ulamkac/numeric.hpp"

namespace ulamkac {

/// Integer matrices of the closed first-order system at order m.  Row
/// (q; p) of the recurrence reads
///
///   h_{n+1} = C1 h_n + (C2 h_n + C3 (h_n + s_n)) / (n+1),
///
/// where s_n is the running prefix sum of h.  C1 collects the plain terms,
/// C2 the 1/(n+1)-weighted terms, C3 the averaged-history terms.
struct CoefficientMatrices {
    int m;
    CanonicalBasis basis;
    std::vector<std::vector<std::int64_t>> C1, C2, C3;
};

inline CoefficientMatrices build_coefficient_matrices(int m) {
    if (m < 1) throw std::invalid_argument("build_coefficient_matrices: m must be >= 1");
    CanonicalBasis basis(m);
    const int d = basis.size();
    CoefficientMatrices mats{m, basis,
                             std::vector<std::vector<std::int64_t>>(d, std::vector<std::int64_t>(d, 0)),
                             std::vector<std::vector<std::int64_t>>(d, std::vector<std::int64_t>(d, 0)),
                             std::vector<std::vector<std::int64_t>>(d, std::vector<std::int64_t>(d, 0))};

    auto column = [&](int q, const Multiset& p) {
        const MomentIndex idx{q, p};
        if (!mats.basis.contains(idx)) {
            throw StructuralError("build_coefficient_matrices: produced index outside basis");
        }
        return mats.basis.position(idx);
    };

    for (int i = 0; i < d; ++i) {
        const auto& [q, p] = mats.basis.at(i);

        // plain terms: one per position-subset b of p
        for (const auto& [sub, rest] : position_subsets(p)) {
            mats.C1[i][column(q + sub.size(), rest)] += 1;
        }

        // 1/(n+1)-weighted terms: split q as beta + (q - beta), the shed
        // exponent q - beta joins the partition
        for (int beta = 1; beta <= q - 1; ++beta) {
            const std::int64_t coef = binomial(q, beta).get_si();
            for (const auto& [sub, rest] : position_subsets(p + (q - beta))) {
                mats.C2[i][column(beta + sub.size(), rest)] += coef;
            }
        }

        // averaged-history terms: nonempty position-subsets of p + [q]
        for (const auto& [sub, rest] : position_subsets(p + q)) {
            if (sub.empty()) continue;
            mats.C3[i][column(sub.size(), rest)] += 1;
        }
    }
    return mats;
}

/// Exact state of the stepped system: h[i] = C_n(q_i; p_i), s = prefix sum.
struct MomentState {
    int n = 0;
    std::vector<Rat> h;
    std::vector<Rat> s;
};

inline MomentState initial_state(int m) {
    // X_0 = 1 and every history sum is empty, so only (m; {}) survives.
    CanonicalBasis basis(m);
    MomentState st;
    st.n = 0;
    st.h.assign(basis.size(), Rat(0));
    st.s.assign(basis.size(), Rat(0));
    st.h[0] = 1;
    return st;
}

inline MomentState step(const MomentState& state, const CoefficientMatrices& mats) {
    const int d = mats.basis.size();
    MomentState next;
    next.n = state.n + 1;
    next.h.assign(d, Rat(0));
    next.s.assign(d, Rat(0));
    const Rat inv(1, state.n + 1);
    for (int i = 0; i < d; ++i) {
        Rat plain(0), weighted(0);
        for (int j = 0; j < d; ++j) {
            if (mats.C1[i][j] != 0) plain += mats.C1[i][j] * state.h[j];
            if (mats.C2[i][j] != 0) weighted += mats.C2[i][j] * state.h[j];
            if (mats.C3[i][j] != 0) weighted += mats.C3[i][j] * (state.h[j] + state.s[j]);
        }
        next.h[i] = plain + inv * weighted;
    }
    for (int i = 0; i < d; ++i) next.s[i] = state.s[i] + state.h[i];
    return next;
}

/// Exact moment values E[X_n^m] for n = 0..N.
struct MomentTable {
    int m;
    std::vector<std::pair<int, Rat>> rows;
};

inline constexpr long long kDefaultStateBudget = 10'000'000;

inline MomentTable exact_moments(int m, int N, long long budget = kDefaultStateBudget) {
    if (m < 1) throw std::invalid_argument("exact_moments: m must be >= 1");
    if (N < 0) throw std::invalid_argument("exact_moments: N must be >= 0");
    auto mats = build_coefficient_matrices(m);
    if (static_cast<long long>(mats.basis.size()) * N > budget) {
        throw BudgetError("exact_moments: state-update budget exceeded");
    }
    MomentTable table{m, {}};
    MomentState st = initial_state(m);
    table.rows.emplace_back(0, st.h[0]);
    for (int n = 0; n < N; ++n) {
        st = step(st, mats);
        table.rows.emplace_back(st.n, st.h[0]);
    }
    return table;
}

/// First moment in closed form: sum_{l<=n} binom(n,l)/l!.
inline Rat laguerre_first_moment(int n) {
    if (n < 0) throw std::invalid_argument("laguerre_first_moment: n must be >= 0");
    Rat acc(0);
    for (int l = 0; l <= n; ++l) {
        Rat term(binomial(n, l), factorial(l));
        term.canonicalize();
        acc += term;
    }
    return acc;
}

/// Second moment stepped through the two-sequence (sigma, alpha) system,
/// transcribed literally.  Cross-checks the generic engine at m = 2.
inline MomentTable hardcoded_m2_moments(int N) {
    if (N < 0) throw std::invalid_argument("hardcoded_m2_moments: N must be >= 0");
    MomentTable table{2, {}};
    Rat sigma(1), alpha(0);
    Rat sum_sigma(0), sum_alpha(0);  // sums over 0..n inclusive, maintained below
    table.rows.emplace_back(0, sigma);
    for (int n = 0; n < N; ++n) {
        sum_sigma += sigma;
        sum_alpha += alpha;
        const Rat inv(1, n + 1);
        Rat sigma_next = sigma + 2 * inv * (sigma + alpha) + inv * sum_sigma;
        Rat alpha_next = sigma + alpha + inv * (sum_sigma + 2 * sum_alpha);
        sigma = std::move(sigma_next);
        alpha = std::move(alpha_next);
        table.rows.emplace_back(n + 1, sigma);
    }
    return table;
}

/// Coefficient polynomials g_0..g_7 of the seven-term scalar recurrence for
/// the third moment, evaluated at n.
inline Int m3_recurrence_coefficient(int i, long n) {
    const Int nn(n);
    switch (i) {
        case 0: return -(nn + 1) * (nn + 1) * (nn + 1) * (nn + 2);
        case 1: return (nn + 2) * (nn + 2) * (54 + 40 * nn + 7 * nn * nn);
        case 2: return -(2614 + 3203 * nn + 1449 * nn * nn + 287 * nn * nn * nn + 21 * nn * nn * nn * nn);
        case 3: return 10262 + 10108 * nn + 3686 * nn * nn + 590 * nn * nn * nn + 35 * nn * nn * nn * nn;
        case 4: return -(nn + 4) * (4430 + 2688 * nn + 535 * nn * nn + 35 * nn * nn * nn);
        case 5: return (nn + 4) * (nn + 5) * (738 + 251 * nn + 21 * nn * nn);
        case 6: return -(nn + 4) * (nn + 5) * (nn + 6) * (48 + 7 * nn);
        case 7: return (nn + 4) * (nn + 5) * (nn + 6) * (nn + 7);
        default: throw std::invalid_argument("m3_recurrence_coefficient: i out of range");
    }
}

inline const std::vector<Rat>& m3_seed_values() {
    static const std::vector<Rat> seeds = {
        Rat(1),        Rat(8),       Rat(91, 2),  Rat(629, 3),
        Rat(20003, 24), Rat(8893, 3), Rat(6953959, 720)};
    return seeds;
}

/// Third moment via the scalar seven-term recurrence, exact rationals.
inline MomentTable scalar_m3_recurrence(int N) {
    if (N < 7) throw std::invalid_argument("scalar_m3_recurrence: N must be >= 7");
    std::vector<Rat> g = m3_seed_values();
    g.reserve(N + 1);
    for (long n = 0; n + 7 <= N; ++n) {
        Rat acc(0);
        for (int i = 0; i < 7; ++i) acc += Rat(m3_recurrence_coefficient(i, n)) * g[n + i];
        const Int lead = m3_recurrence_coefficient(7, n);
        if (lead == 0) throw StructuralError("scalar_m3_recurrence: vanishing leading coefficient");
        g.push_back(-acc / Rat(lead));
    }
    MomentTable table{3, {}};
    for (int n = 0; n <= N; ++n) table.rows.emplace_back(n, g[n]);
    return table;
}

/// Power-series residual of the second-moment ODE
///   (z^2 - 6z + 7) G + (3z - 8)(1-z)^2 G' + (1-z)^4 G''
/// against the exact sigma series.  Returns the first index in 0..N-4 with a
/// nonzero coefficient, or nullopt when they all vanish.
inline std::optional<int> m2_ode_first_nonzero(int N) {
    if (N < 4) throw std::invalid_argument("m2_ode_first_nonzero: N must be >= 4");
    auto table = exact_moments(2, N);
    auto sigma = [&](int k) -> Rat {
        if (k < 0 || k > N) return Rat(0);
        return table.rows[k].second;
    };
    auto g0 = [&](int k) { return sigma(k); };
    auto g1 = [&](int k) { return (k < 0 || k + 1 > N) ? Rat(0) : Rat(k + 1) * sigma(k + 1); };
    auto g2 = [&](int k) {
        return (k < 0 || k + 2 > N) ? Rat(0) : Rat((k + 2)) * Rat(k + 1) * sigma(k + 2);
    };
    // (3z-8)(1-z)^2 = -8 + 19z - 14z^2 + 3z^3; (1-z)^4 = 1 - 4z + 6z^2 - 4z^3 + z^4
    for (int k = 0; k <= N - 4; ++k) {
        Rat r = 7 * g0(k) - 6 * g0(k - 1) + g0(k - 2);
        r += -8 * g1(k) + 19 * g1(k - 1) - 14 * g1(k - 2) + 3 * g1(k - 3);
        r += g2(k) - 4 * g2(k - 1) + 6 * g2(k - 2) - 4 * g2(k - 3) + g2(k - 4);
        if (r != 0) return k;
    }
    return std::nullopt;
}

}  // namespace ulamkac
