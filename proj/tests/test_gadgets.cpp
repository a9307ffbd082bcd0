#include <doctest.h>

#include "forge/error.hpp"
#include "forge/gadgets.hpp"

using namespace forge;

TEST_CASE("verify_avg_free finds arithmetic progressions") {
    auto bad = verify_avg_free({BigNat(1), BigNat(2), BigNat(3)}, 2);
    CHECK(!bad.ok);
    REQUIRE(bad.counterexample.has_value());
    // the reported violation really violates the definition
    const auto& ce = *bad.counterexample;
    BigNat sum(0);
    for (const auto& x : ce.xs) sum += x;
    CHECK(sum == BigNat(std::uint64_t(ce.b)) * ce.x);
    bool all_equal = true;
    for (const auto& x : ce.xs)
        if (!(x == ce.x)) all_equal = false;
    CHECK((ce.a != ce.b || !all_equal));

    CHECK(verify_avg_free({BigNat(1)}, 5).ok);
}

TEST_CASE("behrend singleton") {
    auto set = behrend_set(1, 3, Rational(BigNat(1), BigNat(2)));
    CHECK(set.elements.size() == 1);
    CHECK(verify_avg_free(set.elements, 3).ok);
}

TEST_CASE("behrend sets pass the brute-force oracle") {
    // test grid within the |B|^k <= 10^8 guard
    for (std::uint64_t n : {1, 2, 4, 6, 8}) {
        for (int k : {2, 3}) {
            auto set = behrend_set(n, k, Rational(BigNat(1), BigNat(2)));
            CHECK(set.elements.size() == n);
            CHECK(verify_avg_free(set.elements, k).ok);
            for (const auto& e : set.elements) CHECK(e <= set.U);
        }
    }
}

TEST_CASE("behrend parameters follow the construction formulas") {
    // n=8, k=3, mu=1/2: d = ceil(2/mu)+2 = 6, u = ceil((d n)^(1/(d-2)))
    auto set = behrend_set(8, 3, Rational(BigNat(1), BigNat(2)));
    CHECK(set.d == 6);
    CHECK(set.u == iroot_ceil(BigNat(48), 4).to_u64());
    BigNat bound = BigNat(2) * (BigNat(2) * BigNat(3) * BigNat(set.u)).pow(set.d);
    CHECK(set.U == bound);
    CHECK(set.elements.back() <= bound);
}

TEST_CASE("behrend rejects bad parameters") {
    CHECK_THROWS_AS(behrend_set(0, 2, Rational(BigNat(1), BigNat(2))), Error);
    CHECK_THROWS_AS(behrend_set(4, 1, Rational(BigNat(1), BigNat(2))), Error);
    CHECK_THROWS_AS(behrend_set(4, 2, Rational(BigNat(1))), Error);
}

TEST_CASE("filler worked examples") {
    // tau below k^2: unary
    auto f1 = filler_multiset(BigNat(3), 2);
    CHECK(f1.P.flatten() == std::vector<BigNat>{BigNat(1), BigNat(1), BigNat(1)});

    // tau = 16, k = 2: h=2, b=3, a=13, c=3; P = {1,1,2,4,4,4}
    auto f2 = filler_multiset(BigNat(16), 2);
    CHECK(f2.h == 2);
    CHECK(f2.a == BigNat(13));
    CHECK(f2.c == 3);
    CHECK(f2.P.flatten() ==
          std::vector<BigNat>{BigNat(1), BigNat(1), BigNat(2), BigNat(4), BigNat(4), BigNat(4)});
    CHECK(f2.P.sum() == BigNat(16));
}

TEST_CASE("filler size bound") {
    for (std::uint64_t tau = 1; tau <= 300; tau++) {
        for (int k = 2; k <= 4; k++) {
            auto f = filler_multiset(BigNat(tau), k);
            CHECK(f.P.sum() == BigNat(tau));
            if (BigNat(tau) >= BigNat(std::uint64_t(k) * std::uint64_t(k))) {
                std::uint64_t logt = ceil_log2_at_least_one(BigNat(tau));
                CHECK(f.P.size() <= 2 * logt + std::uint64_t(k - 1) * logt +
                                        2 * std::uint64_t(k) * std::uint64_t(k));
            }
        }
    }
}

TEST_CASE("split_filler worked compositions") {
    auto f = filler_multiset(BigNat(16), 2);
    PartitionInstance inst;
    inst.items = f.P;
    inst.k = 2;

    auto check_split = [&](std::vector<BigNat> targets) {
        inst.targets = targets;
        auto w = split_filler(f, targets);
        CHECK(check_witness(ProblemInstance(inst), Witness(w)));
    };
    check_split({BigNat(7), BigNat(9)});
    check_split({BigNat(0), BigNat(16)});
    check_split({BigNat(8), BigNat(8)});
    check_split({BigNat(16), BigNat(0)});

    CHECK_THROWS_AS(split_filler(f, {BigNat(7), BigNat(8)}), BadCompositionSum);
}

TEST_CASE("every composition splits, small grid") {
    // exhaustive over tau <= 60 here; the acceptance suite covers tau <= 300
    for (std::uint64_t tau = 1; tau <= 60; tau++) {
        for (int k = 2; k <= 3; k++) {
            auto f = filler_multiset(BigNat(tau), k);
            PartitionInstance inst;
            inst.items = f.P;
            inst.k = k;
            std::vector<std::uint64_t> t(std::size_t(k), 0);
            // enumerate compositions of tau into k parts
            std::function<void(int, std::uint64_t)> rec = [&](int pos, std::uint64_t rest) {
                if (pos == k - 1) {
                    t[std::size_t(pos)] = rest;
                    std::vector<BigNat> targets;
                    for (auto v : t) targets.push_back(BigNat(v));
                    auto w = split_filler(f, targets);
                    inst.targets = targets;
                    REQUIRE(check_witness(ProblemInstance(inst), Witness(w)));
                    return;
                }
                for (std::uint64_t v = 0; v <= rest; v++) {
                    t[std::size_t(pos)] = v;
                    rec(pos + 1, rest - v);
                }
            };
            rec(0, tau);
        }
    }
}
