#include <doctest.h>

#include "forge/harness.hpp"
#include "forge/solvers.hpp"

using namespace forge;

TEST_CASE("every spec-named pass is registered (coverage gate)") {
    const auto& registry = pass_registry();
    for (const auto& id : expected_pass_ids()) {
        INFO(id);
        CHECK(registry.count(id) == 1);
    }
    CHECK(registry.size() == expected_pass_ids().size());
}

TEST_CASE("generators are deterministic in the seed") {
    for (const auto& gen : known_generators()) {
        if (gen.rfind("cnf", 0) == 0) {
            Rng a(7), b(7), c(8);
            CnfFormula fa = generate_cnf(gen, a);
            CnfFormula fb = generate_cnf(gen, b);
            CHECK(fa.num_vars == fb.num_vars);
            CHECK(fa.num_clauses() == fb.num_clauses());
            (void)c;
            continue;
        }
        Rng a(7), b(7);
        ProblemInstance ia = generate_instance(gen, a);
        ProblemInstance ib = generate_instance(gen, b);
        CHECK(kind_of(ia) == kind_of(ib));
        CHECK(parameter_of(ia) == parameter_of(ib));
    }
}

TEST_CASE("roundtrip_check covers the formula-driven passes") {
    CorpusSpec eth{"", 21, 25};
    auto r1 = roundtrip_check("build_eth_instance", eth);
    CHECK(r1.ok());
    CHECK(r1.checked == 25);

    CorpusSpec seth{"", 23, 10};
    auto r2 = roundtrip_check("build_seth_instance", seth);
    CHECK(r2.ok());
    CHECK(r2.checked == 10);

    CorpusSpec fam{"", 27, 40};
    auto r3 = roundtrip_check("subset_sum_to_vss", fam);
    CHECK(r3.ok());
}

TEST_CASE("param audit reports ratios and respects recorded constants") {
    CorpusSpec corpus{"", 31, 50};
    auto audit = param_audit("targets_to_plain_multiset", corpus);
    CHECK(audit.ok());
    CHECK(audit.checked > 0);
    // T' = 3*max t exactly: the T bound holds with c2 = 2 and n >= 2
    auto audit2 = param_audit("binpacking_to_partition", corpus);
    CHECK(audit2.ok());
}

TEST_CASE("bounded cardinality check accepts planted corpora and skips the rest") {
    CorpusSpec corpus{"bounded_multiset_small", 37, 200};
    auto report = bounded_cardinality_check(corpus);
    CHECK(report.ok());
    CHECK(report.checked > 0);
}

TEST_CASE("unknown pass and generator ids fail loudly") {
    CorpusSpec corpus{"", 1, 1};
    CHECK_THROWS(roundtrip_check("no_such_pass", corpus));
    Rng rng(1);
    CHECK_THROWS(generate_instance("no_such_generator", rng));
}
