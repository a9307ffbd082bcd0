#include <doctest.h>

#include <random>

#include "forge/dimacs.hpp"
#include "forge/error.hpp"
#include "forge/harness.hpp"
#include "forge/json_io.hpp"

using namespace forge;

TEST_CASE("dimacs basics") {
    auto r = parse_dimacs("p cnf 2 1\n1 -2 0\n");
    CHECK(r.formula.num_vars == 2);
    REQUIRE(r.formula.clauses.size() == 1);
    CHECK(r.formula.clauses[0].literals == std::vector<int>{1, -2});
    CHECK(r.warnings.empty());

    CHECK_THROWS_AS(parse_dimacs("c just a comment\n"), MalformedHeader);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), LiteralOutOfRange);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n0\n"), EmptyClause);

    // header/body mismatch on the clause count: warn, body wins
    auto mism = parse_dimacs("p cnf 2 5\n1 0\n-2 0\n");
    CHECK(mism.formula.clauses.size() == 2);
    CHECK(!mism.warnings.empty());
}

TEST_CASE("dimacs round trip") {
    CnfFormula f;
    f.num_vars = 3;
    f.clauses.push_back(Clause{{1, -2, 3}});
    f.clauses.push_back(Clause{{-3}});
    auto r = parse_dimacs(to_dimacs(f));
    CHECK(r.formula.num_vars == f.num_vars);
    CHECK(r.formula.clauses.size() == f.clauses.size());
    CHECK(r.formula.clauses[0].literals == f.clauses[0].literals);
}

TEST_CASE("dimacs fuzz: mutated inputs always parse or raise, never crash") {
    std::mt19937_64 rng(61);
    const std::string seedtext = "p cnf 4 3\nc comment\n1 -2 0\n3 4 -1 0\n-4 0\n";
    int parsed = 0, rejected = 0;
    for (int i = 0; i < 1000; i++) {
        std::string text = seedtext;
        int edits = 1 + int(rng() % 4);
        for (int e = 0; e < edits; e++) {
            std::size_t pos = rng() % text.size();
            switch (rng() % 4) {
                case 0: text[pos] = char('0' + rng() % 10); break;
                case 1: text[pos] = char(32 + rng() % 95); break;
                case 2: text.erase(pos, 1); break;
                default: text.insert(pos, 1, char('0' + rng() % 10)); break;
            }
        }
        try {
            auto r = parse_dimacs(text);
            parsed++;
            r.formula.validate();
        } catch (const Error&) {
            rejected++;
        }
    }
    CHECK(parsed + rejected == 1000);
}

TEST_CASE("instance JSON round trips bit-exactly over the corpus") {
    for (const auto& gen : known_generators()) {
        if (gen.rfind("cnf", 0) == 0) continue;
        Rng rng(101);
        for (int i = 0; i < 10; i++) {
            ProblemInstance inst = generate_instance(gen, rng);
            std::string text = serialize_instance(inst);
            ProblemInstance back = parse_instance(text);
            CHECK(serialize_instance(back) == text);
            CHECK(kind_of(back) == kind_of(inst));
        }
    }
}

TEST_CASE("JSON schema violations carry a path") {
    CHECK_THROWS_AS(parse_instance("not json"), SchemaViolation);
    CHECK_THROWS_AS(parse_instance("{\"kind\": \"partition\"}"), SchemaViolation);
    // malformed decimal
    try {
        parse_instance("{\"kind\": \"multiset_partition\", \"k\": 2, \"items\": [\"1e5\"]}");
        CHECK(false);
    } catch (const SchemaViolation& e) {
        CHECK(e.path == "$.items[0]");
    }
    // empty items list is valid
    ProblemInstance empty =
        parse_instance("{\"kind\": \"multiset_partition\", \"k\": 2, \"items\": []}");
    CHECK(std::get<PartitionInstance>(empty).n_items() == 0);
}

TEST_CASE("witness JSON round trips") {
    Witness w1 = PartitionWitness{{1, 2, 2, 1}};
    Witness back1 = parse_witness(serialize_witness(w1));
    CHECK(std::get<PartitionWitness>(back1).bin_of == std::vector<int>{1, 2, 2, 1});

    ScheduleWitness sw;
    sw.placements.push_back({2, BigNat(17)});
    Witness back2 = parse_witness(serialize_witness(Witness(sw)));
    CHECK(std::get<ScheduleWitness>(back2).placements[0].machine == 2);
    CHECK(std::get<ScheduleWitness>(back2).placements[0].start == BigNat(17));

    Witness w3 = SubsetWitness{{true, false, true}};
    Witness back3 = parse_witness(serialize_witness(w3));
    CHECK(std::get<SubsetWitness>(back3).take == std::vector<bool>{true, false, true});
}

TEST_CASE("signed thresholds serialize with their sign") {
    SchedulingInstance s;
    s.machines.k = 2;
    s.objective = Objective::Lmax;
    s.lambda = SignedBig{true, BigNat(5)};
    s.jobs.push_back(Job{BigNat(3), {}, BigNat(9), {}});
    std::string text = serialize_instance(ProblemInstance(s));
    CHECK(text.find("\"-5\"") != std::string::npos);
    auto back = std::get<SchedulingInstance>(parse_instance(text));
    CHECK(back.lambda.negative);
    CHECK(back.lambda.magnitude == BigNat(5));
}
