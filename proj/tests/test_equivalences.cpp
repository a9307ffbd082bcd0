#include <doctest.h>

#include <random>

#include "forge/equivalences.hpp"
#include "forge/error.hpp"
#include "forge/harness.hpp"
#include "forge/solvers.hpp"

using namespace forge;

namespace {

PartitionInstance partition(std::vector<std::uint64_t> vals, int k) {
    PartitionInstance p;
    std::vector<BigNat> items(vals.begin(), vals.end());
    p.items = Multiset::from_values(items);
    p.k = k;
    return p;
}

bool solve(const ProblemInstance& inst) { return oracle_verdict(inst) == OracleVerdict::Yes; }

bool out_verdict(const ReductionOutput& out) {
    if (out.is_decided()) return out.decided->yes;
    return solve(*out.instance);
}

}  // namespace

TEST_CASE("partition -> bin packing") {
    auto yes = partition_to_binpacking(partition({1, 2, 3}, 2));
    REQUIRE(!yes.is_decided());
    const auto& bp = std::get<PartitionInstance>(*yes.instance);
    CHECK(bp.capacity == BigNat(3));
    CHECK(solve(*yes.instance));

    auto odd = partition_to_binpacking(partition({1, 2, 4}, 2));
    REQUIRE(odd.is_decided());
    CHECK(!odd.decided->yes);
}

TEST_CASE("bin packing -> partition via the filler multiset") {
    PartitionInstance a = partition({3, 3}, 2);
    a.capacity = BigNat(3);
    auto out = binpacking_to_partition(a);
    REQUIRE(!out.is_decided());
    CHECK(std::get<PartitionInstance>(*out.instance).items == a.items);  // tau = 0
    CHECK(solve(*out.instance));

    PartitionInstance b = partition({2}, 2);
    b.capacity = BigNat(2);
    auto out2 = binpacking_to_partition(b);
    REQUIRE(!out2.is_decided());
    // tau = 2 < k^2: filler {1,1}; X' = {1,1,2}
    CHECK(std::get<PartitionInstance>(*out2.instance).items.flatten() ==
          std::vector<BigNat>{BigNat(1), BigNat(1), BigNat(2)});
    CHECK(solve(*out2.instance));

    PartitionInstance c = partition({3, 3, 3}, 2);
    c.capacity = BigNat(4);
    auto out3 = binpacking_to_partition(c);
    REQUIRE(out3.is_decided());
    CHECK(!out3.decided->yes);  // 9 > 8 = kT
}

TEST_CASE("targets -> plain multiset with one dummy per bin") {
    PartitionInstance inst = partition({1, 2}, 2);
    inst.targets = std::vector<BigNat>{BigNat(1), BigNat(2)};
    auto out = targets_to_plain_multiset(inst);
    REQUIRE(!out.is_decided());
    // T = 6, dummies 5 and 4
    CHECK(std::get<PartitionInstance>(*out.instance).items.flatten() ==
          std::vector<BigNat>{BigNat(1), BigNat(2), BigNat(4), BigNat(5)});
    CHECK(solve(*out.instance));

    PartitionInstance empty;
    empty.k = 2;
    empty.targets = std::vector<BigNat>{BigNat(0), BigNat(0)};
    auto out2 = targets_to_plain_multiset(empty);
    REQUIRE(out2.is_decided());
    CHECK(out2.decided->yes);
}

TEST_CASE("multiset -> bounded keeps the range invariant") {
    auto out = multiset_to_bounded(partition({2, 2}, 2));
    REQUIRE(!out.is_decided());
    const auto& b = std::get<PartitionInstance>(*out.instance);
    BigNat W = BigNat(4).pow(10) * BigNat(2);
    CHECK(b.items.flatten() == std::vector<BigNat>{W, W, W + BigNat(2), W + BigNat(2)});
    CHECK(b.is_bounded());
    CHECK(solve(*out.instance));

    auto no = multiset_to_bounded(partition({1, 3}, 2));
    REQUIRE(!no.is_decided());
    CHECK(!solve(*no.instance));
}

TEST_CASE("bounded multiset -> set twins are distinct and in range") {
    PartitionInstance inst;
    inst.k = 2;
    std::uint64_t n = 4;
    BigNat W = BigNat(n).pow(10) * BigNat(3);
    inst.items = Multiset::from_values({W, W, W - BigNat(1), W - BigNat(1)});
    inst.bounded_W = W;
    auto out = bounded_multiset_to_set(inst);
    REQUIRE(!out.is_decided());
    const auto& set_inst = std::get<PartitionInstance>(*out.instance);
    CHECK(set_inst.set_flag);
    CHECK(set_inst.n_items() == 2 * n);
    CHECK(set_inst.items.all_multiplicity_one());
    CHECK(solve(*out.instance) == solve(ProblemInstance(inst)));
}

TEST_CASE("Q||Cmax -> P||Cmax worked example") {
    // p=(2,3), speeds (1, 1/2), M=4: floors (4,2), M' = 12, dummies (8,10)
    SchedulingInstance q;
    q.machines.k = 2;
    q.machines.speeds = {Rational(BigNat(1)), Rational(BigNat(1), BigNat(2))};
    q.objective = Objective::Cmax;
    q.lambda = SignedBig::of(BigNat(4));
    q.jobs.push_back(Job{BigNat(2), {}, {}, {}});
    q.jobs.push_back(Job{BigNat(3), {}, {}, {}});
    auto out = qcmax_to_pcmax(q);
    REQUIRE(!out.is_decided());
    const auto& p = std::get<SchedulingInstance>(*out.instance);
    CHECK(p.lambda.magnitude == BigNat(12));
    REQUIRE(p.jobs.size() == 4);
    CHECK(p.jobs[2].p == BigNat(8));
    CHECK(p.jobs[3].p == BigNat(10));
    CHECK(sched_bruteforce(q).yes);
    CHECK(sched_bruteforce(p).yes);

    // all speeds 1: dummies uniform
    SchedulingInstance u = q;
    u.machines.speeds = {Rational(BigNat(1)), Rational(BigNat(1))};
    u.lambda = SignedBig::of(BigNat(3));
    auto out2 = qcmax_to_pcmax(u);
    REQUIRE(!out2.is_decided());
    const auto& p2 = std::get<SchedulingInstance>(*out2.instance);
    CHECK(p2.jobs[2].p == p2.jobs[3].p);
}

TEST_CASE("bounded partition = weak grouped with one group") {
    PartitionInstance inst;
    inst.k = 2;
    std::uint64_t n = 4;
    BigNat W = BigNat(n).pow(10) * BigNat(3);
    inst.items = Multiset::from_values({W, W - BigNat(1), W - BigNat(2), W - BigNat(3)});
    inst.bounded_W = W;
    auto out = bounded_to_weak_grouped_q1(inst);
    REQUIRE(!out.is_decided());
    const auto& g = std::get<GroupedInstance>(*out.instance);
    CHECK(g.q() == 1);
    CHECK(g.s == 2);
    CHECK(check_grouped_yes(g).yes == bounded_partition_bruteforce(inst).yes);

    PartitionInstance bad;
    bad.k = 2;
    bad.items = Multiset::from_values({W, W - BigNat(1), W - BigNat(2)});
    bad.bounded_W = W;
    CHECK_THROWS_AS(bounded_to_weak_grouped_q1(bad), IndivisibleGroup);
}

TEST_CASE("weak targets -> weak multiset structure") {
    // synthetic k=2, s=1, q=1 instance with valid targets
    GroupedInstance g;
    g.k = 2;
    g.s = 1;
    std::uint64_t n = 2;
    g.W = BigNat(n).pow(10) * BigNat(3);
    g.groups.push_back(Multiset::from_values({g.W, g.W - BigNat(2)}));
    g.weak_flag = true;
    g.targets = std::vector<BigNat>{g.W};
    auto out = weak_targets_to_weak_multiset(g);
    if (!out.is_decided()) {
        const auto& h = std::get<GroupedInstance>(*out.instance);
        CHECK(h.q() == 2);
        CHECK(h.groups.back().size() == std::uint64_t(h.k) * h.s);
    }
}

TEST_CASE("special-case embeddings") {
    PartitionInstance bounded;
    bounded.k = 2;
    std::uint64_t n = 2;
    bounded.bounded_W = BigNat(n).pow(10) * BigNat(2);
    bounded.items =
        Multiset::from_values({*bounded.bounded_W, *bounded.bounded_W - BigNat(1)});
    auto out = embed_special_case(ProblemInstance(bounded), "multiset_partition");
    REQUIRE(!out.is_decided());
    CHECK(kind_of(*out.instance) == "multiset_partition");

    PartitionInstance bp = partition({1, 2, 3}, 2);
    bp.capacity = BigNat(3);
    auto sched = embed_special_case(ProblemInstance(bp), "scheduling_P_cmax");
    REQUIRE(!sched.is_decided());
    CHECK(solve(*sched.instance) == solve(ProblemInstance(bp)));

    CHECK_THROWS_AS(embed_special_case(ProblemInstance(bp), "vector_subset_sum"),
                    NotASpecialCaseEdge);
}

TEST_CASE("verdict preservation on random corpora") {
    struct Case {
        const char* pass;
        const char* generator;
        int count;
    };
    for (const Case& c : {Case{"partition_to_binpacking", "partition_small", 100},
                          Case{"binpacking_to_partition", "binpacking_small", 100},
                          Case{"targets_to_plain_multiset", "targets_multiset_small", 100},
                          Case{"multiset_to_bounded", "partition_small", 60},
                          Case{"bounded_multiset_to_set", "bounded_multiset_small", 60},
                          Case{"qcmax_to_pcmax", "qcmax_small", 50},
                          Case{"bounded_to_weak_grouped_q1", "bounded_divisible_small", 40},
                          Case{"weak_targets_to_weak_multiset", "weak_grouped_targets_toy", 40},
                          Case{"weak_multiset_to_weak_set", "weak_grouped_toy", 40}}) {
        CorpusSpec corpus{c.generator, 5, std::uint64_t(c.count)};
        auto report = roundtrip_check(c.pass, corpus);
        INFO(c.pass);
        CHECK(report.ok());
        CHECK(report.checked > 0);
    }
}

TEST_CASE("pass metadata supports the parameter audit") {
    for (const char* pass : {"partition_to_binpacking", "binpacking_to_partition",
                             "targets_to_plain_multiset", "multiset_to_bounded",
                             "bounded_multiset_to_set", "qcmax_to_pcmax"}) {
        CorpusSpec corpus{"", 7, 60};
        auto audit = param_audit(pass, corpus);
        INFO(pass);
        CHECK(audit.ok());
    }
}

TEST_CASE("chained cycle preserves verdicts") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 40; i++) {
        PartitionInstance start;
        start.k = 2 + int(rng() % 2);
        std::uint64_t n = 2 + rng() % (start.k == 2 ? 6 : 2);
        std::vector<BigNat> vals;
        for (std::uint64_t j = 0; j < n; j++) vals.push_back(BigNat(1 + rng() % 50));
        start.items = Multiset::from_values(vals);
        bool expect = solve(ProblemInstance(start));

        ReductionOutput step = partition_to_binpacking(start);
        if (step.is_decided()) {
            CHECK(step.decided->yes == expect);
            continue;
        }
        CHECK(out_verdict(step) == expect);
        step = binpacking_to_partition(std::get<PartitionInstance>(*step.instance));
        if (step.is_decided()) {
            CHECK(step.decided->yes == expect);
            continue;
        }
        CHECK(out_verdict(step) == expect);
        step = multiset_to_bounded(std::get<PartitionInstance>(*step.instance));
        if (step.is_decided()) {
            CHECK(step.decided->yes == expect);
            continue;
        }
        CHECK(out_verdict(step) == expect);
        step = bounded_multiset_to_set(std::get<PartitionInstance>(*step.instance));
        if (step.is_decided()) {
            CHECK(step.decided->yes == expect);
            continue;
        }
        CHECK(out_verdict(step) == expect);
        // and back into a plain partition instance via the special case
        ReductionOutput back = embed_special_case(*step.instance, "partition");
        REQUIRE(!back.is_decided());
        CHECK(out_verdict(back) == expect);
    }
}
