#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ulamkac/numeric.hpp"

namespace ulamkac {

/// Finitely supported Laurent polynomial in w = 1 - z with exact rational
/// coefficients.  u = 1/(1 - z) is the same object read with negated
/// exponents, so no second variable is ever needed.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly term(const Rat& coeff, int exp) {
        LaurentPoly p;
        if (coeff != 0) p.coeffs_[exp] = coeff;
        return p;
    }

    static LaurentPoly constant(const Rat& coeff) { return term(coeff, 0); }

    bool is_zero() const { return coeffs_.empty(); }

    /// Single nonzero term c * w^k?
    bool is_monomial() const { return coeffs_.size() == 1; }

    int min_exp() const {
        if (is_zero()) throw std::logic_error("LaurentPoly: zero polynomial has no exponents");
        return coeffs_.begin()->first;
    }

    int max_exp() const {
        if (is_zero()) throw std::logic_error("LaurentPoly: zero polynomial has no exponents");
        return coeffs_.rbegin()->first;
    }

    Rat coeff(int exp) const {
        auto it = coeffs_.find(exp);
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    const std::map<int, Rat>& terms() const { return coeffs_; }

    LaurentPoly& operator+=(const LaurentPoly& other) {
        for (const auto& [e, c] : other.coeffs_) {
            Rat& slot = coeffs_[e];
            slot += c;
            if (slot == 0) coeffs_.erase(e);
        }
        return *this;
    }

    LaurentPoly operator+(const LaurentPoly& other) const {
        LaurentPoly r = *this;
        r += other;
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& other) const { return *this + (-other); }

    LaurentPoly operator*(const LaurentPoly& other) const {
        LaurentPoly r;
        for (const auto& [e1, c1] : coeffs_) {
            for (const auto& [e2, c2] : other.coeffs_) {
                Rat& slot = r.coeffs_[e1 + e2];
                slot += c1 * c2;
                if (slot == 0) r.coeffs_.erase(e1 + e2);
            }
        }
        return r;
    }

    /// Multiply by w^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e + k] = c;
        return r;
    }

    /// Divide by a monomial c * w^k (the only division the Laurent ring
    /// supports without leaving it).
    LaurentPoly divided_by(const LaurentPoly& mono) const {
        if (!mono.is_monomial()) {
            throw std::invalid_argument("LaurentPoly: divisor must be a nonzero monomial");
        }
        const auto& [e, c] = *mono.coeffs_.begin();
        LaurentPoly r;
        for (const auto& [e1, c1] : coeffs_) r.coeffs_[e1 - e] = c1 / c;
        return r;
    }

    /// Exact evaluation at w = w0; w0 must be nonzero when negative
    /// exponents are present.
    Rat evaluate(const Rat& w0) const {
        Rat acc(0);
        for (const auto& [e, c] : coeffs_) {
            if (e < 0 && w0 == 0) {
                throw std::domain_error("LaurentPoly: pole at w = 0");
            }
            Rat p(1);
            for (int k = 0; k < (e < 0 ? -e : e); ++k) p *= w0;
            if (e < 0) {
                acc += c / p;
            } else {
                acc += c * p;
            }
        }
        return acc;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeffs_) {
            if (!first) os << " + ";
            os << rat_string(c);
            if (e != 0) os << "*w^" << e;
            first = false;
        }
        return os.str();
    }

    bool operator==(const LaurentPoly&) const = default;

private:
    std::map<int, Rat> coeffs_;  // exponent -> nonzero coefficient
};

/// Square matrix of Laurent polynomials.
class LaurentMatrix {
public:
    explicit LaurentMatrix(int dim) : dim_(dim), entries_(dim * dim) {}

    static LaurentMatrix identity(int dim) {
        LaurentMatrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = LaurentPoly::constant(1);
        return m;
    }

    int dim() const { return dim_; }

    LaurentPoly& at(int i, int j) { return entries_[i * dim_ + j]; }
    const LaurentPoly& at(int i, int j) const { return entries_[i * dim_ + j]; }

    LaurentMatrix operator*(const LaurentMatrix& other) const {
        if (dim_ != other.dim_) throw std::invalid_argument("LaurentMatrix: dimension mismatch");
        LaurentMatrix r(dim_);
        for (int i = 0; i < dim_; ++i) {
            for (int k = 0; k < dim_; ++k) {
                const LaurentPoly& a = at(i, k);
                if (a.is_zero()) continue;
                for (int j = 0; j < dim_; ++j) {
                    const LaurentPoly& b = other.at(k, j);
                    if (b.is_zero()) continue;
                    r.at(i, j) += a * b;
                }
            }
        }
        return r;
    }

    bool operator==(const LaurentMatrix&) const = default;

private:
    int dim_;
    std::vector<LaurentPoly> entries_;
};

/// Invert a lower-triangular Laurent matrix whose diagonal entries are
/// nonzero monomials, by the forward recurrence
///   a(i,j) = (delta(i,j) - sum_k c(i,i-k) a(i-k,j)) / c(i,i).
/// Reports the offending index if a diagonal entry is not invertible.
inline LaurentMatrix invert_triangular(const LaurentMatrix& X) {
    const int d = X.dim();
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            if (!X.at(i, j).is_zero()) {
                throw std::invalid_argument("invert_triangular: matrix is not lower triangular");
            }
        }
        if (X.at(i, i).is_zero() || !X.at(i, i).is_monomial()) {
            throw std::invalid_argument("invert_triangular: diagonal entry " + std::to_string(i) +
                                        " is not an invertible monomial");
        }
    }
    LaurentMatrix inv(d);
    for (int j = 0; j < d; ++j) {
        for (int i = j; i < d; ++i) {
            LaurentPoly acc = i == j ? LaurentPoly::constant(1) : LaurentPoly();
            for (int k = 1; k <= i - j; ++k) {
                if (X.at(i, i - k).is_zero() || inv.at(i - k, j).is_zero()) continue;
                acc += -(X.at(i, i - k) * inv.at(i - k, j));
            }
            inv.at(i, j) = acc.divided_by(X.at(i, i));
        }
    }
    return inv;
}

}  // namespace ulamkac
