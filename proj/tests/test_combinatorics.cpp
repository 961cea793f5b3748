#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "ulamkac/basis.hpp"
#include "ulamkac/multiset.hpp"
#include "ulamkac/rng.hpp"

using namespace ulamkac;

namespace {

// Independent partition counter (Euler-style DP), used as the oracle for
// partition enumeration sizes and for the basis count identity.
// table[s][k] = number of partitions of s into parts <= k
long long partition_count(int n) {
    std::vector<std::vector<long long>> table(n + 1, std::vector<long long>(n + 1, 0));
    for (int k = 0; k <= n; ++k) table[0][k] = 1;
    for (int s = 1; s <= n; ++s) {
        for (int k = 1; k <= n; ++k) {
            table[s][k] = table[s][k - 1] + (s >= k ? table[s - k][k] : 0);
        }
    }
    return table[n][n];
}

Multiset random_multiset(Xoshiro256StarStar& rng, int max_len = 5, int max_part = 6) {
    const int len = static_cast<int>(rng.uniform_below(max_len + 1));
    std::vector<int> parts;
    for (int i = 0; i < len; ++i) {
        parts.push_back(1 + static_cast<int>(rng.uniform_below(max_part)));
    }
    return Multiset(parts);
}

}  // namespace

TEST_CASE("partitions enumerates canonical partitions", "[combinatorics]") {
    auto p0 = partitions(0);
    REQUIRE(p0.size() == 1);
    CHECK(p0[0].empty());

    auto p3 = partitions(3);
    REQUIRE(p3.size() == 3);
    std::set<std::vector<int>> got;
    for (const auto& p : p3) got.insert(p.parts());
    CHECK(got == std::set<std::vector<int>>{{3}, {2, 1}, {1, 1, 1}});

    CHECK(partitions(6).size() == 11);

    for (int n = 0; n <= 14; ++n) {
        auto ps = partitions(n);
        CHECK(static_cast<long long>(ps.size()) == partition_count(n));
        std::set<std::vector<int>> uniq;
        for (const auto& p : ps) {
            CHECK(p.size() == n);
            auto parts = p.parts();
            CHECK(std::is_sorted(parts.begin(), parts.end(), std::greater<int>()));
            uniq.insert(parts);
        }
        CHECK(uniq.size() == ps.size());
    }

    CHECK_THROWS_AS(partitions(-1), std::invalid_argument);
}

TEST_CASE("position_subsets enumerates by positions with multiplicity", "[combinatorics]") {
    auto splits = position_subsets(Multiset{1, 1});
    REQUIRE(splits.size() == 4);
    int singletons = 0;
    for (const auto& s : splits) {
        CHECK(s.sub + s.rest == Multiset({1, 1}));
        if (s.sub == Multiset{1}) ++singletons;
    }
    CHECK(singletons == 2);

    auto empty = position_subsets(Multiset{});
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].sub.empty());
    CHECK(empty[0].rest.empty());

    auto s21 = position_subsets(Multiset{2, 1});
    REQUIRE(s21.size() == 4);
    std::multiset<std::vector<int>> subs;
    for (const auto& s : s21) subs.insert(s.sub.parts());
    CHECK(subs == std::multiset<std::vector<int>>{{}, {2}, {1}, {2, 1}});
}

TEST_CASE("multiset algebra", "[combinatorics]") {
    Multiset a{3, 1, 1};
    Multiset b{2, 1};
    CHECK((a + b).parts() == std::vector<int>{3, 2, 1, 1, 1});
    CHECK((a + b) - b == a);
    CHECK(a.size() == 5);
    CHECK(a.length() == 3);
    CHECK_THROWS_AS(b - a, std::invalid_argument);
    CHECK_THROWS_AS(Multiset({0}), std::invalid_argument);

    Xoshiro256StarStar rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Multiset x = random_multiset(rng);
        Multiset y = random_multiset(rng);
        CHECK((x + y) - y == x);
        CHECK((x + y).size() == x.size() + y.size());
        auto splits = position_subsets(x);
        CHECK(splits.size() == (std::size_t{1} << x.length()));
        for (const auto& s : splits) CHECK(s.sub + s.rest == x);
    }
}

TEST_CASE("canonical basis ordering and counts", "[combinatorics]") {
    CanonicalBasis b3(3);
    REQUIRE(b3.size() == 4);
    CHECK(b3.at(0) == MomentIndex{3, Multiset{}});
    CHECK(b3.at(1) == MomentIndex{2, Multiset{1}});
    CHECK(b3.at(2) == MomentIndex{1, Multiset{2}});
    CHECK(b3.at(3) == MomentIndex{1, Multiset{1, 1}});

    CanonicalBasis b1(1);
    REQUIRE(b1.size() == 1);
    CHECK(b1.at(0) == MomentIndex{1, Multiset{}});

    CanonicalBasis b4(4);
    REQUIRE(b4.size() == 7);
    std::vector<MomentIndex> want = {
        {4, Multiset{}},     {3, Multiset{1}},    {2, Multiset{2}},   {1, Multiset{3}},
        {2, Multiset{1, 1}}, {1, Multiset{2, 1}}, {1, Multiset{1, 1, 1}}};
    CHECK(b4.entries() == want);

    CHECK_THROWS_AS(CanonicalBasis(0), std::invalid_argument);

    for (int m = 1; m <= 12; ++m) {
        CanonicalBasis b(m);
        long long expect = 0;
        for (int j = 0; j < m; ++j) expect += partition_count(j);
        CHECK(b.size() == expect);
        CHECK(static_cast<double>(b.size()) <= std::exp(3.0 * std::sqrt(static_cast<double>(m))));
        // lookup is a bijection onto 0..size-1
        for (int i = 0; i < b.size(); ++i) {
            CHECK(b.position(b.at(i)) == i);
            CHECK(b.at(i).q >= 1);
            CHECK(b.at(i).q <= m);
            CHECK(b.at(i).p.size() == m - b.at(i).q);
        }
        // first entry is (m; {})
        CHECK(b.at(0) == MomentIndex{m, Multiset{}});
    }

    CHECK_THROWS_AS(b3.position(MomentIndex{5, Multiset{}}), std::out_of_range);
}
