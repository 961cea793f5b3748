#pragma once

#include <vector>

#include "ulamkac/numeric.hpp"

namespace ulamkac {

using RatMatrix = std::vector<std::vector<Rat>>;

inline RatMatrix zero_matrix(int dim) { return RatMatrix(dim, std::vector<Rat>(dim, Rat(0))); }

inline RatMatrix identity_matrix(int dim) {
    RatMatrix m = zero_matrix(dim);
    for (int i = 0; i < dim; ++i) m[i][i] = 1;
    return m;
}

inline RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    const int d = static_cast<int>(a.size());
    RatMatrix r = zero_matrix(d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < d; ++j) {
                if (b[k][j] == 0) continue;
                r[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return r;
}

inline bool is_nonnegative(const RatMatrix& m) {
    for (const auto& row : m) {
        for (const auto& v : row) {
            if (v < 0) return false;
        }
    }
    return true;
}

}  // namespace ulamkac
