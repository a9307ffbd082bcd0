#include <doctest.h>

#include "forge/error.hpp"
#include "forge/problems.hpp"

using namespace forge;

namespace {

PartitionInstance binpack(std::vector<std::uint64_t> vals, int k, std::uint64_t cap) {
    PartitionInstance p;
    std::vector<BigNat> items(vals.begin(), vals.end());
    p.items = Multiset::from_values(items);
    p.k = k;
    p.capacity = BigNat(cap);
    return p;
}

}  // namespace

TEST_CASE("check_witness on bin packing") {
    // X = {1,2,3}, k=2, T=3: {3} | {1,2} fits, {1} | {2,3} does not
    PartitionInstance inst = binpack({1, 2, 3}, 2, 3);
    // flatten order is 1,2,3
    CHECK(check_witness(inst, PartitionWitness{{2, 2, 1}}));
    CHECK(!check_witness(inst, PartitionWitness{{1, 2, 2}}));
    CHECK_THROWS_AS(check_witness(inst, PartitionWitness{{1, 2}}), ShapeMismatch);
    CHECK_THROWS_AS(check_witness(inst, SubsetWitness{{true, true, false}}), ShapeMismatch);
}

TEST_CASE("check_witness recomputes target sums exactly") {
    PartitionInstance inst;
    inst.items = Multiset::from_values({BigNat(1), BigNat(2), BigNat(3)});
    inst.k = 2;
    inst.targets = std::vector<BigNat>{BigNat(3), BigNat(3)};
    CHECK(check_witness(inst, PartitionWitness{{1, 1, 2}}));
    CHECK(!check_witness(inst, PartitionWitness{{1, 2, 1}}));
}

TEST_CASE("parameter_of follows the problem boxes") {
    PartitionInstance targets;
    targets.items = Multiset::from_values({BigNat(1)});
    targets.k = 3;
    targets.targets = std::vector<BigNat>{BigNat(3), BigNat(7), BigNat(5)};
    CHECK(parameter_of(targets).to_u64() == 7);

    SchedulingInstance sched;
    sched.machines.k = 2;
    sched.objective = Objective::Cmax;
    sched.lambda = SignedBig::of(BigNat(9));
    for (std::uint64_t p : {2, 2, 3}) sched.jobs.push_back(Job{BigNat(p), {}, {}, {}});
    CHECK(parameter_of(sched).to_u64() == 7);

    VssInstance vss;
    vss.k = 2;
    vss.target = {BigNat(2), BigNat(2)};
    CHECK(parameter_of(vss).to_u64() == 4);
}

TEST_CASE("bounded range check is exact") {
    // n = 4, W = 4^10 * 3: items must satisfy x * n^10 >= W * (n^10 - 1)
    std::uint64_t n = 4;
    BigNat W = BigNat(n).pow(10) * BigNat(3);
    CHECK(in_bounded_range(W, W, n));
    CHECK(in_bounded_range(W - BigNat(3), W, n));  // offset cap is floor(W/n^10) = 3
    CHECK(!in_bounded_range(W - BigNat(4), W, n));
    CHECK(!in_bounded_range(W + BigNat(1), W, n));
}

TEST_CASE("grouped witness checks sizes per group and loads per bin") {
    GroupedInstance g;
    g.k = 2;
    g.s = 2;
    std::uint64_t n = 4;
    g.W = BigNat(n).pow(10) * BigNat(4);
    BigNat a = g.W, b = g.W - BigNat(2);
    g.groups.push_back(Multiset::from_values({a, a, b, b}));
    // flatten order: b, b, a, a; mu = a + b
    CHECK(check_witness(ProblemInstance(g), PartitionWitness{{1, 0, 1, 0}}));
    // both big items in bin 1: load a+a != mu
    CHECK(!check_witness(ProblemInstance(g), PartitionWitness{{0, 0, 1, 1}}));
    // wrong size: three items in bin 1
    CHECK(!check_witness(ProblemInstance(g), PartitionWitness{{1, 1, 1, 0}}));
}

TEST_CASE("scheduling witness: overlap, release dates, objectives") {
    SchedulingInstance s;
    s.machines.k = 1;
    s.objective = Objective::Cmax;
    s.lambda = SignedBig::of(BigNat(5));
    s.jobs.push_back(Job{BigNat(3), BigNat(2), {}, {}});
    // single job p=3, r=2 -> completes at 5
    CHECK(check_witness(ProblemInstance(s), ScheduleWitness{{{1, BigNat(2)}}}));
    // starting before the release date is invalid
    CHECK(!check_witness(ProblemInstance(s), ScheduleWitness{{{1, BigNat(1)}}}));

    SchedulingInstance two;
    two.machines.k = 1;
    two.objective = Objective::SumUj;
    two.lambda = SignedBig::of(BigNat(0));
    two.jobs.push_back(Job{BigNat(2), {}, BigNat(2), {}});
    two.jobs.push_back(Job{BigNat(2), {}, BigNat(4), {}});
    CHECK(check_witness(ProblemInstance(two),
                        ScheduleWitness{{{1, BigNat(0)}, {1, BigNat(2)}}}));
    // overlapping placements rejected
    CHECK(!check_witness(ProblemInstance(two),
                         ScheduleWitness{{{1, BigNat(0)}, {1, BigNat(1)}}}));
}

TEST_CASE("validation rejects malformed instances") {
    PartitionInstance p;
    p.items = Multiset::from_values({BigNat(1), BigNat(1)});
    p.k = 2;
    p.set_flag = true;
    CHECK_THROWS_AS(p.validate(), InvariantViolation);

    SchedulingInstance s;
    s.machines.k = 1;
    s.objective = Objective::SumUj;
    s.jobs.push_back(Job{BigNat(1), {}, {}, {}});  // missing due date
    CHECK_THROWS_AS(s.validate(), InvariantViolation);

    CnfFormula f;
    f.num_vars = 2;
    f.clauses.push_back(Clause{{1, -3}});
    CHECK_THROWS_AS(f.validate(), LiteralOutOfRange);
}

TEST_CASE("formula statistics are recomputed") {
    CnfFormula f;
    f.num_vars = 3;
    f.clauses.push_back(Clause{{1, -2, 3}});
    f.clauses.push_back(Clause{{1, 2}});
    f.clauses.push_back(Clause{{-1}});
    CHECK(f.max_width() == 3);
    CHECK(f.max_occurrences() == 3);  // x1 appears in all three clauses
    CHECK(f.num_clauses() == 3);
}
