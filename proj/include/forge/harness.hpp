#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "forge/problems.hpp"

namespace forge {

// Deterministic RNG: raw engine draws only (std distributions vary across
// standard libraries).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t below(std::uint64_t n);                       // uniform-ish in [0, n)
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi);    // inclusive
    bool coin() { return below(2) == 1; }

  private:
    std::mt19937_64 engine_;
};

struct CorpusSpec {
    std::string generator;
    std::uint64_t seed = 1;
    std::uint64_t count = 100;
};

// Deterministic instance corpora keyed by generator id.
ProblemInstance generate_instance(const std::string& generator, Rng& rng);
CnfFormula generate_cnf(const std::string& generator, Rng& rng);
std::vector<std::string> known_generators();

enum class PassKind { Instance, SubsetSumFamily, EthFormula, SethFormula };

struct PassInfo {
    std::string id;
    PassKind kind = PassKind::Instance;
    std::string default_generator;
    std::function<ReductionOutput(const ProblemInstance&)> apply;  // Instance kind only
};

// Every reduction pass registers here; the coverage test fails when a
// spec-named pass is missing.
const std::map<std::string, PassInfo>& pass_registry();
std::vector<std::string> expected_pass_ids();

struct RoundtripReport {
    std::uint64_t checked = 0;
    std::uint64_t matched = 0;
    std::uint64_t decided = 0;   // Decided shortcut fired
    std::uint64_t skipped = 0;   // promise violations etc.
    std::optional<std::string> counterexample;  // minimized, serialized
    bool ok() const { return matched == checked; }
};

// Compares oracle verdicts before/after a pass on a deterministic corpus;
// on mismatch, greedily shrinks the instance (bounded at 1000 steps).
RoundtripReport roundtrip_check(const std::string& pass_id, const CorpusSpec& corpus);

struct AuditReport {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    // max observed n'/(n + log T) and log_n(T'/T), as strings
    std::string max_size_ratio;
    std::string note;
    bool ok() const { return violations == 0; }
};

// Asserts n' <= c1*(n + ceil log2 T) and T' <= T * n^c2 against each pass's
// recorded constants (n clamped to >= 2, T to >= 1).
AuditReport param_audit(const std::string& pass_id, const CorpusSpec& corpus);

struct CardinalityReport {
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;
    std::uint64_t violations = 0;
    bool ok() const { return violations == 0; }
};

// Every equal-sum yes-witness on a bounded instance puts exactly n/k items
// in each bin.
CardinalityReport bounded_cardinality_check(const CorpusSpec& corpus);

// Oracle verdict used on both sides of every round trip.
enum class OracleVerdict { Yes, No, PromiseViolated };
OracleVerdict oracle_verdict(const ProblemInstance& inst);

}  // namespace forge
