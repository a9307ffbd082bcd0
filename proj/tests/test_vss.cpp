#include <doctest.h>

#include <random>

#include "forge/solvers.hpp"
#include "forge/vss.hpp"

using namespace forge;

TEST_CASE("vss -> subset sum worked example") {
    VssInstance v;
    v.k = 2;
    v.vectors = {{BigNat(0), BigNat(1)}, {BigNat(2), BigNat(1)}, {BigNat(0), BigNat(2)}};
    v.target = {BigNat(2), BigNat(2)};
    auto out = vss_to_subset_sum(v);
    CHECK(out.base == BigNat(12));
    CHECK(out.instance.items == std::vector<BigNat>{BigNat(12), BigNat(14), BigNat(24)});
    CHECK(out.instance.target == BigNat(26));
    CHECK(subset_sum_bruteforce(out.instance).yes);
}

TEST_CASE("dominated vectors are discarded before packing") {
    VssInstance v;
    v.k = 2;
    v.vectors = {{BigNat(3), BigNat(0)}, {BigNat(1), BigNat(1)}};
    v.target = {BigNat(2), BigNat(2)};
    auto out = vss_to_subset_sum(v);
    CHECK(out.kept == std::vector<std::size_t>{1});
    CHECK(out.instance.items.size() == 1);
}

TEST_CASE("k=1 packing is the identity") {
    VssInstance v;
    v.k = 1;
    v.vectors = {{BigNat(5)}, {BigNat(7)}};
    v.target = {BigNat(12)};
    auto out = vss_to_subset_sum(v);
    CHECK(out.instance.items == std::vector<BigNat>{BigNat(5), BigNat(7)});
    CHECK(out.instance.target == BigNat(12));
}

TEST_CASE("subset sum -> vss worked example") {
    // x = (3,5,6), t = 8, k = 2: B = 3; digits (0,1),(2,1),(0,2); carry 0
    // member has target (2,2) and is yes via {3,5}
    std::vector<BigNat> items = {BigNat(3), BigNat(5), BigNat(6)};
    auto out = subset_sum_to_vss(items, BigNat(8), 2);
    CHECK(out.base == BigNat(3));
    REQUIRE(!out.members.empty());
    const auto& first = out.members.front();
    CHECK(first.carries == std::vector<std::uint64_t>{0, 0, 0});
    CHECK(first.instance.vectors ==
          std::vector<std::vector<BigNat>>{{BigNat(0), BigNat(1)},
                                           {BigNat(2), BigNat(1)},
                                           {BigNat(0), BigNat(2)}});
    CHECK(first.instance.target == std::vector<BigNat>{BigNat(2), BigNat(2)});
    CHECK(vss_bruteforce(first.instance).yes);
    // at most n^(k-1) members
    CHECK(out.members.size() <= 3);
}

TEST_CASE("k=1 split is a single identity member") {
    auto out = subset_sum_to_vss({BigNat(2), BigNat(4)}, BigNat(5), 1);
    REQUIRE(out.members.size() == 1);
    CHECK(out.members[0].instance.target == std::vector<BigNat>{BigNat(5)});
    CHECK(!vss_bruteforce(out.members[0].instance).yes);
}

TEST_CASE("unsatisfiable subset sums have no yes member") {
    for (int k : {1, 2, 3}) {
        auto out = subset_sum_to_vss({BigNat(2), BigNat(4)}, BigNat(5), k);
        for (const auto& m : out.members) CHECK(!vss_bruteforce(m.instance).yes);
    }
}

TEST_CASE("round trips agree with the DP oracles") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 200; i++) {
        // subset-sum side: n <= 10, t <= 200
        SubsetSumInstance ss;
        std::uint64_t n = 1 + rng() % 10;
        for (std::uint64_t j = 0; j < n; j++) ss.items.push_back(BigNat(1 + rng() % 60));
        ss.target = BigNat(rng() % 201);
        bool expect = subset_sum_dp(ss).yes;
        for (int k : {1, 2, 3}) {
            auto fam = subset_sum_to_vss(ss.items, ss.target, k);
            bool any = false;
            for (const auto& m : fam.members)
                if (!any && vss_dp(m.instance).yes) any = true;
            CHECK(any == expect);
        }
    }
}

TEST_CASE("packing direction agrees with direct enumeration") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 200; i++) {
        VssInstance v;
        v.k = 1 + int(rng() % 3);
        std::uint64_t n = 1 + rng() % 8;
        for (int c = 0; c < v.k; c++) v.target.push_back(BigNat(rng() % 9));
        for (std::uint64_t j = 0; j < n; j++) {
            std::vector<BigNat> vec;
            for (int c = 0; c < v.k; c++) vec.push_back(BigNat(rng() % 6));
            v.vectors.push_back(vec);
        }
        auto out = vss_to_subset_sum(v);
        CHECK(subset_sum_bruteforce(out.instance).yes == vss_bruteforce(v).yes);
    }
}

TEST_CASE("negative-coordinate carry members are skipped, not clamped") {
    // t = 3, k = 2: B = 2, digits t = (1,1); carries c_1 with
    // t_hat = (1 + 2c_1, 1 - c_1): c_1 > 1 would give a negative coordinate
    auto out = subset_sum_to_vss({BigNat(1), BigNat(1), BigNat(1)}, BigNat(3), 2);
    for (const auto& m : out.members) {
        CHECK(m.carries[1] <= 1);
        for (const auto& c : m.instance.target) CHECK(c >= BigNat(0));
    }
}
