#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ulamkac/numeric.hpp"
#include "ulamkac/recurrence.hpp"

namespace ulamkac {

/// ln E[X_n^3] for n = 0..n_max, computed from the scalar recurrence in
/// big-float arithmetic at the requested precision.
struct LogSeries {
    int n_max;
    unsigned long precision_bits;
    std::vector<double> ln;
};

/// Run the seven-term recurrence in floating point wide enough that the
/// terms never overflow, and take logs as we go.  The accumulated relative
/// error of ln gamma_n is bounded by N * 2^(1 - precision_bits) (a coarse
/// per-step rounding count, not a proven bound).
inline LogSeries m3_log_series(int N, unsigned long precision_bits = 256) {
    if (N < 100) throw std::invalid_argument("m3_log_series: N must be >= 100");
    if (precision_bits < 64) throw std::invalid_argument("m3_log_series: precision must be >= 64 bits");

    std::vector<mpf_class> g;
    g.reserve(N + 1);
    for (const Rat& seed : m3_seed_values()) {
        mpf_class v(0, precision_bits);
        mpf_set_q(v.get_mpf_t(), seed.get_mpq_t());
        g.push_back(std::move(v));
    }
    LogSeries out{N, precision_bits, {}};
    out.ln.reserve(N + 1);
    for (const auto& v : g) out.ln.push_back(log_value(v));

    mpf_class acc(0, precision_bits), term(0, precision_bits);
    for (long n = 0; n + 7 <= N; ++n) {
        acc = 0;
        for (int i = 0; i < 7; ++i) {
            term = g[n + i];
            term *= m3_recurrence_coefficient(i, n);
            acc += term;
        }
        acc /= m3_recurrence_coefficient(7, n);
        acc = -acc;
        if (sgn(acc) <= 0) {
            throw PrecisionError("m3_log_series: series lost positivity; raise precision_bits");
        }
        g.emplace_back(acc);
        out.ln.push_back(log_value(acc));
    }
    return out;
}

/// Ordinary least-squares slope/intercept of y against x.
struct LineFit {
    double slope;
    double intercept;
    double residual_rms;
};

inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("least_squares: need at least two paired points");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("least_squares: degenerate abscissae");
    LineFit fit{};
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

/// Slope of ln gamma_n against sqrt(n) over an inclusive window, using the
/// exact rational series (windows up to a couple thousand) or the big-float
/// series beyond that.
inline LineFit m3_sqrt_slope(int window_lo, int window_hi, unsigned long precision_bits = 256,
                             int exact_cutoff = 2000) {
    if (window_lo < 0 || window_hi < window_lo) {
        throw std::invalid_argument("m3_sqrt_slope: bad window");
    }
    if (window_hi == window_lo) throw std::invalid_argument("m3_sqrt_slope: empty window");
    std::vector<double> xs, ys;
    xs.reserve(window_hi - window_lo + 1);
    ys.reserve(window_hi - window_lo + 1);
    if (window_hi <= exact_cutoff) {
        auto table = scalar_m3_recurrence(std::max(window_hi, 7));
        for (int n = window_lo; n <= window_hi; ++n) {
            xs.push_back(std::sqrt(static_cast<double>(n)));
            ys.push_back(log_value(table.rows[n].second, precision_bits));
        }
    } else {
        auto series = m3_log_series(window_hi, precision_bits);
        for (int n = window_lo; n <= window_hi; ++n) {
            xs.push_back(std::sqrt(static_cast<double>(n)));
            ys.push_back(series.ln[n]);
        }
    }
    return least_squares(xs, ys);
}

}  // namespace ulamkac
