#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ulamkac/laurent.hpp"
#include "ulamkac/matrix.hpp"
#include "ulamkac/recurrence.hpp"

namespace ulamkac {

/// Q = I - z C1 as a Laurent matrix in w = 1 - z: diagonal entries w,
/// subdiagonal entries -(1-w) C1[i][j].
inline LaurentMatrix build_Q(const CoefficientMatrices& mats) {
    const int d = mats.basis.size();
    LaurentMatrix q(d);
    for (int i = 0; i < d; ++i) {
        q.at(i, i) = LaurentPoly::term(1, 1);
        for (int j = 0; j < i; ++j) {
            const auto c = mats.C1[i][j];
            if (c == 0) continue;
            q.at(i, j) = LaurentPoly::term(-c, 0) + LaurentPoly::term(c, 1);
        }
    }
    return q;
}

/// Similarity transform by P = diag((1-z)^{-len(p_i)}): entry (i, j) picks
/// up w^{len(p_i) - len(p_j)}.  Pass invert = true for the P^{-1} direction.
inline LaurentMatrix conjugate_by_P(const LaurentMatrix& m, const CanonicalBasis& basis,
                                    bool invert = false) {
    if (m.dim() != basis.size()) throw std::invalid_argument("conjugate_by_P: dimension mismatch");
    const int d = m.dim();
    LaurentMatrix r(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (m.at(i, j).is_zero()) continue;
            int shift = basis.part_length(i) - basis.part_length(j);
            if (invert) shift = -shift;
            r.at(i, j) = m.at(i, j).shifted(shift);
        }
    }
    return r;
}

/// The split of the conjugated system into its constant skeleton and the
/// u-expansion:
///   P^{-1} Q^{-1} P = B1 / (1-z) + B2(z),   D = E / (1-z) + F(z),
///   h'(u) = [B1 E + (B1 F + B2 E - G)/u + B2 F / u^2] h(u) = sum Ms[i] u^{-i}.
struct SystemDecomposition {
    int m;
    CanonicalBasis basis;
    RatMatrix B1;            // w^{-1} part of the conjugated Q^{-1}
    RatMatrix E;             // w^{-1} part of D
    RatMatrix G;             // diag(len(p_i)), from differentiating P
    LaurentMatrix B2;        // remainder, exponents >= 0 only
    LaurentMatrix F;         // remainder, exponents >= 0 only
    std::vector<RatMatrix> Ms;  // Ms[i] = coefficient of u^{-i}; Ms[0] primitive
};

namespace detail {

inline void require_exponent_window(const LaurentMatrix& m, int window, const std::string& stage) {
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            const auto& e = m.at(i, j);
            if (e.is_zero()) continue;
            if (e.min_exp() < -window || e.max_exp() > window) {
                throw StructuralError("decompose: exponent window exceeded in " + stage +
                                      " at entry (" + std::to_string(i) + "," + std::to_string(j) +
                                      "): " + e.str());
            }
        }
    }
}

/// Split M = lead * w^{-1} + rest with rest supported on exponents >= 0.
/// Any exponent below -1 is a structural violation.
inline std::pair<RatMatrix, LaurentMatrix> split_simple_pole(const LaurentMatrix& m,
                                                             const std::string& stage) {
    const int d = m.dim();
    RatMatrix lead = zero_matrix(d);
    LaurentMatrix rest(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const auto& e = m.at(i, j);
            if (e.is_zero()) continue;
            if (e.min_exp() < -1) {
                throw StructuralError("decompose: exponent below -1 in " + stage + " at entry (" +
                                      std::to_string(i) + "," + std::to_string(j) + "): " + e.str());
            }
            lead[i][j] = e.coeff(-1);
            LaurentPoly r = e - LaurentPoly::term(lead[i][j], -1);
            if (!r.is_zero() && r.min_exp() < 0) {
                throw StructuralError("decompose: negative exponent left in remainder of " + stage);
            }
            rest.at(i, j) = r;
        }
    }
    return {lead, rest};
}

}  // namespace detail

inline SystemDecomposition decompose(const CoefficientMatrices& mats, int exp_window = -1) {
    const int d = mats.basis.size();
    const int window = exp_window > 0 ? exp_window : 4 * mats.m;

    LaurentMatrix q = build_Q(mats);
    LaurentMatrix qinv = invert_triangular(q);
    detail::require_exponent_window(qinv, window, "Q^{-1}");

    LaurentMatrix qinv_conj = conjugate_by_P(qinv, mats.basis);
    auto [B1, B2] = detail::split_simple_pole(qinv_conj, "P^{-1} Q^{-1} P");

    // D = P^{-1} [C1 + C2 + C3/(1-z)] P
    LaurentMatrix D(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const int shift = mats.basis.part_length(i) - mats.basis.part_length(j);
            LaurentPoly e = LaurentPoly::term(mats.C1[i][j] + mats.C2[i][j], shift) +
                            LaurentPoly::term(mats.C3[i][j], shift - 1);
            D.at(i, j) = e;
        }
    }
    detail::require_exponent_window(D, window, "D");
    auto [E, F] = detail::split_simple_pole(D, "D");

    // S(w) = w^2 (P^{-1} Q^{-1} P) D - w G; coefficient of w^i is Ms[i]
    LaurentMatrix S = qinv_conj * D;
    detail::require_exponent_window(S, window, "S");
    RatMatrix G = zero_matrix(d);
    for (int i = 0; i < d; ++i) G[i][i] = mats.basis.part_length(i);

    int max_exp = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            LaurentPoly e = S.at(i, j).shifted(2);
            if (i == j) e += LaurentPoly::term(-G[i][i], 1);
            if (!e.is_zero()) {
                if (e.min_exp() < 0) {
                    throw StructuralError("decompose: u-expansion has a positive power of u at (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
                }
                max_exp = std::max(max_exp, e.max_exp());
            }
            S.at(i, j) = e;
        }
    }

    SystemDecomposition dec{mats.m, mats.basis, std::move(B1), std::move(E), std::move(G),
                            std::move(B2), std::move(F), {}};
    dec.Ms.reserve(max_exp + 1);
    for (int e = 0; e <= max_exp; ++e) {
        RatMatrix Me = zero_matrix(d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) Me[i][j] = S.at(i, j).coeff(e);
        }
        dec.Ms.push_back(std::move(Me));
    }
    while (dec.Ms.size() > 1) {  // trim trailing all-zero coefficients
        bool all_zero = true;
        for (const auto& row : dec.Ms.back()) {
            for (const auto& v : row) {
                if (v != 0) all_zero = false;
            }
        }
        if (!all_zero) break;
        dec.Ms.pop_back();
    }

    // Self-checks: all of these hold for the well-formed system, so a
    // failure here means the builder or the ordering is broken.
    if (!is_nonnegative(dec.B1) || !is_nonnegative(dec.E)) {
        throw StructuralError("decompose: B1 or E has a negative entry");
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if ((dec.B1[i][j] != 0) != (mats.C1[i][j] != 0)) {
                throw StructuralError("decompose: B1 zero pattern differs from C1");
            }
        }
    }
    if (dec.Ms[0] != mat_mul(dec.B1, dec.E)) {
        throw StructuralError("decompose: M0 != B1 * E");
    }
    return dec;
}

inline SystemDecomposition decompose(int m, int exp_window = -1) {
    return decompose(build_coefficient_matrices(m), exp_window);
}

/// Entries of E derived straight from the restricted recurrence sums (the
/// empty-subset term of the weighted sums, the single-part subsets of the
/// averaged sums) instead of extracted from D.  Must agree with
/// decompose(...).E; the two constructions cross-check each other.
inline RatMatrix build_E_restricted(const CoefficientMatrices& mats) {
    const int d = mats.basis.size();
    RatMatrix E = zero_matrix(d);
    for (int i = 0; i < d; ++i) {
        const auto& [q, p] = mats.basis.at(i);
        for (int beta = 1; beta <= q - 1; ++beta) {
            const int j = mats.basis.position(MomentIndex{beta, p + (q - beta)});
            E[i][j] += binomial(q, beta);
        }
        for (const auto& [sub, rest] : position_subsets(p + q)) {
            if (sub.length() != 1) continue;
            const int j = mats.basis.position(MomentIndex{sub.size(), rest});
            E[i][j] += 1;
        }
    }
    return E;
}

/// Exact evaluation of R(z0) = (I - z0 C1)^{-1} [C1 + C2 + C3/(1-z0)] by
/// forward substitution.  Deliberately does not touch the Laurent pipeline,
/// so the two routes can be compared.
inline RatMatrix evaluate_R(int m, const Rat& z0) {
    if (z0 < 0 || z0 >= 1) throw std::invalid_argument("evaluate_R: need 0 <= z0 < 1");
    auto mats = build_coefficient_matrices(m);
    const int d = mats.basis.size();
    const Rat u = Rat(1) / (Rat(1) - z0);
    RatMatrix rhs = zero_matrix(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            rhs[i][j] = Rat(mats.C1[i][j]) + Rat(mats.C2[i][j]) + Rat(mats.C3[i][j]) * u;
        }
    }
    // solve (I - z0 C1) X = rhs row group by forward substitution;
    // A is lower triangular with diagonal 1 - z0
    RatMatrix X = zero_matrix(d);
    const Rat diag = Rat(1) - z0;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            Rat acc = rhs[i][j];
            for (int k = 0; k < i; ++k) {
                if (mats.C1[i][k] == 0) continue;
                acc += z0 * Rat(mats.C1[i][k]) * X[k][j];
            }
            X[i][j] = acc / diag;
        }
    }
    return X;
}

}  // namespace ulamkac
