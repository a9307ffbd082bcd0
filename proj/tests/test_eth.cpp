#include <doctest.h>

#include <random>
#include <set>

#include "forge/bitblock.hpp"
#include "forge/error.hpp"
#include "forge/reduce_eth.hpp"
#include "forge/solvers.hpp"

using namespace forge;

namespace {

CnfFormula make(int nvars, std::vector<std::vector<int>> clauses) {
    CnfFormula f;
    f.num_vars = nvars;
    for (auto& c : clauses) f.clauses.push_back(Clause{c});
    return f;
}

// independent check: parse a high-to-low concatenation of binary strings
BigNat from_bits(const std::string& bits) {
    BigNat acc(0);
    for (char c : bits) {
        acc = acc << 1;
        if (c == '1') acc += BigNat(1);
    }
    return acc;
}

std::mt19937_64 fuzz_rng(97);

CnfFormula random_3cnf(int max_vars, int max_clauses) {
    CnfFormula f;
    f.num_vars = 1 + int(fuzz_rng() % max_vars);
    int m = 1 + int(fuzz_rng() % max_clauses);
    for (int i = 0; i < m; i++) {
        Clause c;
        int w = 1 + int(fuzz_rng() % 3);
        for (int t = 0; t < w; t++) {
            int v = 1 + int(fuzz_rng() % f.num_vars);
            c.literals.push_back(fuzz_rng() % 2 ? v : -v);
        }
        f.clauses.push_back(c);
    }
    return f;
}

}  // namespace

TEST_CASE("pad_formula adds tautologies until divisibility") {
    CnfFormula f3 = make(3, {{1, 2}, {-1, 3}, {2, 3}});
    CnfFormula p = pad_formula(f3, 3);
    CHECK(p.num_clauses() == 4);
    // the added clause is a tautology over x1
    Clause added = p.clauses.back();
    CHECK(added.literals == std::vector<int>{1, -1});

    CnfFormula f4 = make(3, {{1}, {2}, {3}, {-1, 2}});
    CHECK(pad_formula(f4, 3).num_clauses() == 4);

    for (int i = 0; i < 200; i++) {
        CnfFormula f = random_3cnf(5, 5);
        for (int k : {2, 3, 4}) {
            CnfFormula padded = pad_formula(f, k);
            CHECK(padded.num_clauses() % (k - 1) == 0);
            CHECK(sat_bruteforce(f).yes == sat_bruteforce(padded).yes);
        }
    }
}

TEST_CASE("channel allocation worked examples") {
    // single clause, k=2: no clause pair, no tuples
    CnfFormula single = make(3, {{1, 2, 3}});
    auto plan1 = allocate_channels(single, 2);
    CHECK(plan1.tuples.empty());

    // (x) & (~x), k=2: both clauses land in bin 1 -> one internal tuple
    CnfFormula contra = make(1, {{1}, {-1}});
    auto plan2 = allocate_channels(contra, 2);
    REQUIRE(plan2.tuples.size() == 1);
    CHECK(!plan2.tuples[0].external);

    // same formula, k=3: l(1)=1, l(2)=2 -> external tuple
    auto plan3 = allocate_channels(contra, 3);
    REQUIRE(plan3.tuples.size() == 1);
    CHECK(plan3.tuples[0].external);
}

TEST_CASE("channel plan invariant: shared channels have disjoint bin pairs") {
    for (int i = 0; i < 100; i++) {
        CnfFormula f = pad_formula(random_3cnf(5, 6), 3);
        auto plan = allocate_channels(f, 3);
        CHECK(plan.channel_of.size() == plan.tuples.size());
        for (const auto& bins : plan.full_bins) {
            std::set<int> seen(bins.begin(), bins.end());
            CHECK(seen.size() == bins.size());  // no bin marked full twice
        }
    }
}

TEST_CASE("single-clause instance: 7 assignment items, solvable") {
    CnfFormula f = make(3, {{1, 2, 3}});
    auto [inst, art] = build_eth_instance(f, 2);
    CHECK(art.items.size() == 7);  // all assignments of 3 vars except all-false
    for (const auto& item : art.items) CHECK(item.kind == EthItem::Kind::Assignment);
    CHECK(partition_targets_bruteforce(inst).yes);

    // the target t_1, independently assembled as a concatenated bit string:
    // I-block 10 bits = 1, pad 10, one II-bit = 1, pad 10, six 3-bit channels = 0
    BigNat expect = from_bits("0000000001"
                              "0000000000"
                              "1"
                              "0000000000"
                              "000000000000000000");
    CHECK(art.targets[0] == expect);
}

TEST_CASE("unsatisfiable contradiction maps to an unsolvable instance") {
    CnfFormula f = make(1, {{1}, {-1}});
    auto [inst2, art2] = build_eth_instance(f, 2);
    CHECK(!partition_targets_bruteforce(inst2).yes);
    auto [inst3, art3] = build_eth_instance(f, 3);
    CHECK(!partition_targets_bruteforce(inst3).yes);
}

TEST_CASE("witness lifting on a k=3 external-tuple instance") {
    CnfFormula f = make(2, {{1, 2}, {-1, 2}});
    auto [inst, art] = build_eth_instance(f, 3);
    CHECK(partition_targets_bruteforce(inst).yes);

    Assignment alpha = {false, true};  // x2 = true satisfies both clauses
    PartitionWitness w = lift_eth_assignment(art, alpha);
    CHECK(check_witness(ProblemInstance(inst), Witness(w)));

    Assignment bad = {true, false};  // fails clause 2
    CHECK_THROWS_AS(lift_eth_assignment(art, bad), NotSatisfying);
}

TEST_CASE("lift places dummies by the shared variable's value") {
    CnfFormula f = make(1, {{1}, {1, -1}});
    auto [inst, art] = build_eth_instance(f, 3);
    // one external tuple (C1, C2, x1)
    REQUIRE(art.channels.tuples.size() == 1);
    CHECK(art.channels.tuples[0].external);
    Assignment alpha = {true};
    PartitionWitness w = lift_eth_assignment(art, alpha);
    CHECK(check_witness(ProblemInstance(inst), Witness(w)));
}

TEST_CASE("round trip on random 3-CNFs, both k") {
    for (int i = 0; i < 120; i++) {
        CnfFormula f = random_3cnf(4, 3);
        bool sat = sat_bruteforce(f).yes;
        for (int k : {2, 3}) {
            auto [inst, art] = build_eth_instance(f, k);
            CHECK(inst.items.size() <=
                  std::uint64_t(7 * art.padded.num_clauses() +
                                6 * art.delta * art.padded.num_clauses()));
            CHECK(partition_targets_bruteforce(inst).yes == sat);
        }
    }
}

TEST_CASE("pad-block hygiene and one assignment item per clause on lifted witnesses") {
    for (int i = 0; i < 60; i++) {
        CnfFormula f = random_3cnf(4, 3);
        auto sat = sat_bruteforce(f);
        if (!sat.yes) continue;
        const auto& take = std::get<SubsetWitness>(*sat.witness).take;
        Assignment alpha(take.begin(), take.end());
        for (int k : {2, 3}) {
            auto [inst, art] = build_eth_instance(f, k);
            PartitionWitness w = lift_eth_assignment(art, alpha);
            REQUIRE(check_witness(ProblemInstance(inst), Witness(w)));

            // per-bin sums
            auto flat = inst.items.flatten();
            std::vector<BigNat> sum(std::size_t(k), BigNat(0));
            for (std::size_t idx = 0; idx < flat.size(); idx++)
                sum[std::size_t(w.bin_of[idx] - 1)] += flat[idx];
            for (int l = 0; l < k; l++) {
                for (const auto& b : art.layout.blocks()) {
                    if (b.name.rfind("pad", 0) != 0) continue;
                    CHECK(extract_block(sum[std::size_t(l)], art.layout, b.name).is_zero());
                }
            }
            // exactly one assignment item per clause lands in bins 1..k-1: the
            // I-block of each packed bin's sum counts its assignment items
            for (int l = 1; l <= k - 1; l++) {
                BigNat count =
                    extract_block(sum[std::size_t(l - 1)], art.layout, "I" + std::to_string(l));
                CHECK(count == BigNat(std::uint64_t(art.padded.num_clauses() / (k - 1))));
            }
        }
    }
}

TEST_CASE("exhaustive tiny round trip, N <= 2, M <= 2") {
    std::vector<Clause> clauses;
    for (int v = 1; v <= 2; v++)
        for (int s = 0; s < 2; s++) clauses.push_back(Clause{{s ? v : -v}});
    for (int s1 = 0; s1 < 2; s1++)
        for (int s2 = 0; s2 < 2; s2++) clauses.push_back(Clause{{s1 ? 1 : -1, s2 ? 2 : -2}});
    std::vector<CnfFormula> formulas;
    for (std::size_t a = 0; a < clauses.size(); a++) {
        CnfFormula f1 = make(2, {});
        f1.clauses = {clauses[a]};
        formulas.push_back(f1);
        for (std::size_t b = a; b < clauses.size(); b++) {
            CnfFormula f2 = make(2, {});
            f2.clauses = {clauses[a], clauses[b]};
            formulas.push_back(f2);
        }
    }
    for (const auto& f : formulas) {
        bool sat = sat_bruteforce(f).yes;
        for (int k : {2, 3}) {
            auto [inst, art] = build_eth_instance(f, k);
            REQUIRE(partition_targets_bruteforce(inst).yes == sat);
        }
    }
}
