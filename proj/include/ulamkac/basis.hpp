#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "ulamkac/multiset.hpp"

namespace ulamkac {

/// Label of one moment sequence at ambient order m: the exponent q of the
/// current term together with the partition p of m - q carried by the
/// history product.
struct MomentIndex {
    int q;
    Multiset p;

    bool operator==(const MomentIndex&) const = default;
    auto operator<=>(const MomentIndex&) const = default;
};

/// The fixed total order on moment indices that defines every matrix
/// row/column layout: ascending length(p), then descending q, then
/// descending lexicographic part order.  The last key is a free choice (any
/// fixed order is a basis permutation); this one reproduces the layout used
/// for the published order-4 matrix.
class CanonicalBasis {
public:
    explicit CanonicalBasis(int m) : m_(m) {
        if (m < 1) throw std::invalid_argument("CanonicalBasis: m must be >= 1");
        for (int q = 1; q <= m; ++q) {
            for (auto& p : partitions(m - q)) {
                entries_.push_back(MomentIndex{q, p});
            }
        }
        std::sort(entries_.begin(), entries_.end(), [](const MomentIndex& a, const MomentIndex& b) {
            if (a.p.length() != b.p.length()) return a.p.length() < b.p.length();
            if (a.q != b.q) return a.q > b.q;
            return a.p.parts() > b.p.parts();
        });
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            lookup_.emplace(entries_[i], static_cast<int>(i));
        }
    }

    int order() const { return m_; }

    /// Number of moment indices at this order.
    int size() const { return static_cast<int>(entries_.size()); }

    const MomentIndex& at(int i) const { return entries_.at(i); }

    const std::vector<MomentIndex>& entries() const { return entries_; }

    int part_length(int i) const { return entries_.at(i).p.length(); }

    /// Position of an index; throws StructuralError-adjacent out_of_range if
    /// the index does not belong to this order.
    int position(const MomentIndex& idx) const {
        auto it = lookup_.find(idx);
        if (it == lookup_.end()) {
            throw std::out_of_range("CanonicalBasis: index not in basis");
        }
        return it->second;
    }

    bool contains(const MomentIndex& idx) const { return lookup_.count(idx) > 0; }

private:
    int m_;
    std::vector<MomentIndex> entries_;
    std::map<MomentIndex, int> lookup_;
};

inline CanonicalBasis canonical_basis(int m) { return CanonicalBasis(m); }

}  // namespace ulamkac
