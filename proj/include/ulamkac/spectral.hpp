#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ulamkac/gf_pipeline.hpp"
#include "ulamkac/matrix.hpp"

namespace ulamkac {

/// Outcome of the primitivity decision for a nonnegative square matrix.
struct PrimitivityResult {
    bool primitive;
    long certifying_power;  // exponent k with M^k > 0 when primitive
    int zero_row;           // a zero entry of M^k when not primitive
    int zero_col;
};

namespace detail {

// boolean d x d matrix as bit rows
struct BoolMatrix {
    int d;
    int words;
    std::vector<std::uint64_t> rows;

    explicit BoolMatrix(int dim) : d(dim), words((dim + 63) / 64), rows(std::size_t(dim) * words, 0) {}

    bool get(int i, int j) const { return rows[std::size_t(i) * words + j / 64] >> (j % 64) & 1; }
    void set(int i, int j) { rows[std::size_t(i) * words + j / 64] |= std::uint64_t{1} << (j % 64); }

    bool all_ones() const {
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                if (!get(i, j)) return false;
            }
        }
        return true;
    }

    BoolMatrix operator*(const BoolMatrix& other) const {
        BoolMatrix r(d);
        for (int i = 0; i < d; ++i) {
            for (int k = 0; k < d; ++k) {
                if (!get(i, k)) continue;
                for (int w = 0; w < words; ++w) {
                    r.rows[std::size_t(i) * words + w] |= other.rows[std::size_t(k) * words + w];
                }
            }
        }
        return r;
    }
};

}  // namespace detail

/// Primitivity via the Wielandt exponent: a nonnegative d x d matrix is
/// primitive iff M^((d-1)^2 + 1) is entrywise positive.  Zero pattern only,
/// so boolean matrix powers suffice.
inline PrimitivityResult is_primitive(const RatMatrix& m) {
    const int d = static_cast<int>(m.size());
    if (d == 0) throw std::invalid_argument("is_primitive: empty matrix");
    detail::BoolMatrix adj(d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(m[i].size()) != d) {
            throw std::invalid_argument("is_primitive: matrix is not square");
        }
        for (int j = 0; j < d; ++j) {
            if (m[i][j] < 0) throw std::invalid_argument("is_primitive: negative entry");
            if (m[i][j] > 0) adj.set(i, j);
        }
    }
    const long wielandt = static_cast<long>(d - 1) * (d - 1) + 1;
    detail::BoolMatrix acc(d);
    for (int i = 0; i < d; ++i) acc.set(i, i);  // M^0
    detail::BoolMatrix pow = adj;
    long e = wielandt;
    long reached = 0;
    long bit = 1;
    // binary powering; once a power is all-ones every higher power is too,
    // because an all-positive power forces every column of M to be nonzero
    while (e > 0) {
        if (e & 1) {
            acc = acc * pow;
            reached += bit;
            if (acc.all_ones()) return {true, reached, -1, -1};
        }
        e >>= 1;
        if (e > 0) {
            pow = pow * pow;
            bit <<= 1;
        }
    }
    if (acc.all_ones()) return {true, wielandt, -1, -1};
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (!acc.get(i, j)) return {false, wielandt, i, j};
        }
    }
    return {true, wielandt, -1, -1};
}

/// Power-iteration output.
struct PerronResult {
    double lambda = 0;
    double residual = 0;
    long iterations = 0;
    bool converged = false;
};

/// Power iteration from the all-ones vector with sup-norm normalization.
/// Stops when the Rayleigh-quotient change and the residual
/// ||Mv - lambda v||_inf / ||v||_inf both fall below tol.  Geometric
/// convergence is guaranteed for primitive M (strictly dominant Perron root).
inline PerronResult perron_eigenvalue(const RatMatrix& m, double tol = 1e-12,
                                      long max_iterations = 1'000'000) {
    const int d = static_cast<int>(m.size());
    std::vector<std::vector<double>> a(d, std::vector<double>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) a[i][j] = m[i][j].get_d();
    }
    std::vector<double> v(d, 1.0), w(d, 0.0);
    PerronResult res;
    double lambda_prev = 0;
    for (long it = 1; it <= max_iterations; ++it) {
        double vv = 0, wv = 0;
        for (int i = 0; i < d; ++i) {
            double acc = 0;
            for (int j = 0; j < d; ++j) acc += a[i][j] * v[j];
            w[i] = acc;
            wv += acc * v[i];
            vv += v[i] * v[i];
        }
        const double lambda = wv / vv;
        double norm = 0;
        for (double x : w) norm = std::max(norm, std::abs(x));
        if (norm == 0) {  // nilpotent direction; the zero matrix has lambda 0
            res = {0.0, 0.0, it, true};
            return res;
        }
        double residual = 0;
        for (int i = 0; i < d; ++i) {
            double acc = 0;
            for (int j = 0; j < d; ++j) acc += a[i][j] * w[j] / norm;
            residual = std::max(residual, std::abs(acc - lambda * w[i] / norm));
        }
        res.lambda = lambda;
        res.residual = residual;
        res.iterations = it;
        if (std::abs(lambda - lambda_prev) < tol && residual < tol) {
            res.converged = true;
            return res;
        }
        lambda_prev = lambda;
        for (int i = 0; i < d; ++i) v[i] = w[i] / norm;
    }
    res.converged = false;
    return res;
}

/// Growth constant of the m-th moment: lambda_m is the Perron-Frobenius
/// eigenvalue of Ms[0] and c_m = 2 sqrt(lambda_m).
struct AsymptoticResult {
    int m = 0;
    RatMatrix M0;
    double lambda = 0;
    double c = 0;
    long iterations = 0;
    double residual = 0;
    double jensen_lower = 0;   // 2m <= c_m
    double log2_upper = 0;     // log2(c_m) <= (m/2 + 1) e^{3 sqrt(m)}
    bool bounds_ok = false;
};

inline AsymptoticResult moment_constant(int m, double tol = 1e-12) {
    auto dec = decompose(m);
    auto prim = is_primitive(dec.Ms[0]);
    if (!prim.primitive) {
        throw StructuralError("moment_constant: M0 is not primitive at entry (" +
                              std::to_string(prim.zero_row) + "," + std::to_string(prim.zero_col) +
                              ")");
    }
    auto pr = perron_eigenvalue(dec.Ms[0], tol);
    if (!pr.converged) {
        throw std::runtime_error("moment_constant: power iteration did not converge; residual " +
                                 std::to_string(pr.residual));
    }
    AsymptoticResult out;
    out.m = m;
    out.M0 = dec.Ms[0];
    out.lambda = pr.lambda;
    out.c = 2.0 * std::sqrt(pr.lambda);
    out.iterations = pr.iterations;
    out.residual = pr.residual;
    out.jensen_lower = 2.0 * m;
    out.log2_upper = (m / 2.0 + 1.0) * std::exp(3.0 * std::sqrt(static_cast<double>(m)));
    out.bounds_ok = out.c >= out.jensen_lower - 1e-9 && std::log2(out.c) <= out.log2_upper;
    return out;
}

}  // namespace ulamkac
