#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ulamkac {

/// Multiset of positive integers (an integer partition when read as the
/// parts of its size).  Parts are kept in non-increasing order, so equality
/// is plain vector equality.
class Multiset {
public:
    Multiset() = default;

    explicit Multiset(std::vector<int> parts) : parts_(std::move(parts)) {
        for (int p : parts_) {
            if (p < 1) throw std::invalid_argument("Multiset: parts must be >= 1");
        }
        std::sort(parts_.begin(), parts_.end(), std::greater<int>());
    }

    Multiset(std::initializer_list<int> parts) : Multiset(std::vector<int>(parts)) {}

    /// Sum of all parts.
    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    /// Number of parts.
    int length() const { return static_cast<int>(parts_.size()); }

    bool empty() const { return parts_.empty(); }

    const std::vector<int>& parts() const { return parts_; }

    /// Disjoint union.
    Multiset operator+(const Multiset& other) const {
        std::vector<int> merged;
        merged.reserve(parts_.size() + other.parts_.size());
        std::merge(parts_.begin(), parts_.end(), other.parts_.begin(), other.parts_.end(),
                   std::back_inserter(merged), std::greater<int>());
        Multiset r;
        r.parts_ = std::move(merged);
        return r;
    }

    Multiset operator+(int part) const { return *this + Multiset({part}); }

    /// Multiset difference; other must be a multisubset of *this.
    Multiset operator-(const Multiset& other) const {
        std::vector<int> rest = parts_;
        for (int p : other.parts_) {
            auto it = std::find(rest.begin(), rest.end(), p);
            if (it == rest.end()) {
                throw std::invalid_argument("Multiset: subtrahend is not a multisubset");
            }
            rest.erase(it);
        }
        Multiset r;
        r.parts_ = std::move(rest);
        return r;
    }

    bool operator==(const Multiset&) const = default;
    auto operator<=>(const Multiset&) const = default;

private:
    std::vector<int> parts_;  // non-increasing
};

/// All integer partitions of n, each in non-increasing part order.
/// partitions(0) is the singleton {empty multiset}.
inline std::vector<Multiset> partitions(int n) {
    if (n < 0) throw std::invalid_argument("partitions: n must be >= 0");
    std::vector<Multiset> out;
    std::vector<int> acc;
    auto rec = [&](auto&& self, int rem, int max_part) -> void {
        if (rem == 0) {
            out.push_back(Multiset(acc));
            return;
        }
        for (int p = std::min(rem, max_part); p >= 1; --p) {
            acc.push_back(p);
            self(self, rem - p, p);
            acc.pop_back();
        }
    };
    rec(rec, n, n == 0 ? 1 : n);
    return out;
}

/// One entry per subset of part *positions*: sub + rest == p.
struct SubsetSplit {
    Multiset sub;
    Multiset rest;
};

/// Enumerate all 2^length(p) position-subsets of p.  Repeated parts yield
/// repeated splits, which is exactly the multiplicity the recurrence sums
/// require.
inline std::vector<SubsetSplit> position_subsets(const Multiset& p) {
    const auto& parts = p.parts();
    const int l = p.length();
    if (l > 30) throw std::invalid_argument("position_subsets: too many parts");
    std::vector<SubsetSplit> out;
    out.reserve(std::size_t{1} << l);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << l); ++mask) {
        std::vector<int> sub, rest;
        for (int i = 0; i < l; ++i) {
            if (mask >> i & 1) {
                sub.push_back(parts[i]);
            } else {
                rest.push_back(parts[i]);
            }
        }
        out.push_back({Multiset(std::move(sub)), Multiset(std::move(rest))});
    }
    return out;
}

}  // namespace ulamkac
