#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "forge/bignat.hpp"
#include "forge/rational.hpp"

namespace forge {

// ---------------------------------------------------------------------------
// CNF formulas

struct Clause {
    std::vector<int> literals;  // signed variable indices, 1-based
    std::vector<int> variables() const;  // distinct, sorted
};

struct CnfFormula {
    int num_vars = 0;
    std::vector<Clause> clauses;

    int num_clauses() const { return int(clauses.size()); }
    // max clause width (distinct variables per clause)
    int max_width() const;
    // max number of clauses any single variable appears in
    int max_occurrences() const;

    void validate() const;  // literal range, non-empty clauses
};

// Truth assignment for variables 1..N, indexed by variable.
using Assignment = std::vector<bool>;

bool clause_satisfied(const Clause& c, const Assignment& a);
bool formula_satisfied(const CnfFormula& f, const Assignment& a);

// ---------------------------------------------------------------------------
// Multisets of naturals

// Sorted by value; multiplicities >= 1.
struct Multiset {
    std::vector<std::pair<BigNat, std::uint64_t>> entries;

    static Multiset from_values(std::vector<BigNat> values);
    std::uint64_t size() const;
    BigNat sum() const;
    BigNat max_value() const;  // error on empty
    bool all_multiplicity_one() const;
    std::vector<BigNat> flatten() const;  // occurrence list, value-sorted
    void add(const BigNat& value, std::uint64_t mult = 1);

    bool operator==(const Multiset&) const = default;
};

// ---------------------------------------------------------------------------
// Problem instances

// Covers Bin Packing, k-way Partition, the Targets and Bounded variants and
// all their multiset forms. Which variant an instance is follows from which
// optional fields are set; set_flag asserts all multiplicities are 1.
struct PartitionInstance {
    Multiset items;
    int k = 2;
    bool set_flag = false;
    std::optional<std::vector<BigNat>> targets;  // size k
    std::optional<BigNat> capacity;              // bin-packing mode
    std::optional<BigNat> bounded_W;             // bounded range [W(1-1/n^10), W]

    std::uint64_t n_items() const { return items.size(); }
    bool is_bin_packing() const { return capacity.has_value(); }
    bool has_targets() const { return targets.has_value(); }
    bool is_bounded() const { return bounded_W.has_value(); }
    std::string kind() const;
    void validate() const;
};

// Grouped k-way Partition (weak_flag marks the promise-problem variant).
struct GroupedInstance {
    std::vector<Multiset> groups;  // each of size k*s
    int k = 2;
    std::uint64_t s = 1;
    BigNat W;
    std::optional<std::vector<BigNat>> targets;  // size k-1
    bool weak_flag = false;
    bool set_flag = false;

    std::uint64_t q() const { return groups.size(); }
    std::uint64_t n_items() const { return std::uint64_t(k) * s * q(); }
    // average load Sigma(G)/k, exact
    Rational mu() const;
    BigNat total_sum() const;
    std::string kind() const;
    void validate() const;
};

enum class Objective { Cmax, SumUj, SumWjCj, SumPjUj, Lmax, Tmax };

std::string objective_name(Objective o);
Objective objective_from_name(const std::string& name);

struct Job {
    BigNat p;                    // processing time, >= 1
    std::optional<BigNat> r;     // release date (Cmax only)
    std::optional<BigNat> d;     // due date
    std::optional<BigNat> w;     // weight (SumWjCj only)
};

struct MachineEnv {
    int k = 1;
    std::vector<Rational> speeds;  // empty = identical machines; else size k, in (0,1]
    bool uniform() const { return !speeds.empty(); }
    Rational speed(int i) const { return uniform() ? speeds[i] : Rational(BigNat(1)); }
};

// Threshold of the decision variant; may be negative only for Lmax.
struct SignedBig {
    bool negative = false;
    BigNat magnitude;

    static SignedBig of(const BigNat& m) { return {false, m}; }
    std::string str() const { return (negative && !magnitude.is_zero() ? "-" : "") + magnitude.str(); }
};

struct SchedulingInstance {
    MachineEnv machines;
    std::vector<Job> jobs;
    Objective objective = Objective::Cmax;
    SignedBig lambda;

    BigNat total_processing() const;
    std::string kind() const;
    void validate() const;
};

struct VssInstance {
    int k = 1;  // dimension
    std::vector<std::vector<BigNat>> vectors;
    std::vector<BigNat> target;

    BigNat parameter_T() const;  // 1-norm of target
    std::string kind() const { return "vector_subset_sum"; }
    void validate() const;
};

// Plain Subset Sum kept as its own lightweight record; it only appears at
// the ends of the Vector Subset Sum equivalences.
struct SubsetSumInstance {
    std::vector<BigNat> items;
    BigNat target;
    std::string kind() const { return "subset_sum"; }
};

using ProblemInstance =
    std::variant<PartitionInstance, GroupedInstance, SchedulingInstance, VssInstance, SubsetSumInstance>;

std::string kind_of(const ProblemInstance& inst);
void validate(const ProblemInstance& inst);

// The paper-defined parameter of each problem box.
BigNat parameter_of(const ProblemInstance& inst);

// x in [W(1 - 1/n^10), W], checked exactly: x * n^10 >= W * (n^10 - 1).
bool in_bounded_range(const BigNat& x, const BigNat& W, std::uint64_t n);

// ---------------------------------------------------------------------------
// Reduction outputs

struct PassMeta {
    std::string lemma_tag;
    // recorded parameter-preservation constants: n' <= c1*(n + ceil(log2 T)),
    // T' <= T * n^c2 (n clamped to >= 2 for the audit)
    std::uint64_t c1 = 1;
    std::uint64_t c2 = 0;
    std::uint64_t n_in = 0;
    std::uint64_t n_out = 0;
    BigNat T_in;
    BigNat T_out;
    // the subset-sum <-> vector-subset-sum equivalences trade the exponent
    // of T and fall outside the standard parameter-preservation audit
    bool param_preserving = true;
};

struct Decided {
    bool yes = false;
    std::string reason;
};

// Either a constructed instance plus provenance, or an immediate verdict
// when a precondition shortcut of the source lemma fires.
struct ReductionOutput {
    std::optional<ProblemInstance> instance;
    std::optional<Decided> decided;
    PassMeta meta;

    bool is_decided() const { return decided.has_value(); }

    static ReductionOutput of(ProblemInstance inst, PassMeta meta);
    static ReductionOutput decide(bool yes, std::string reason, PassMeta meta);
};

// ---------------------------------------------------------------------------
// Witnesses

// Bin index per item occurrence (occurrences in Multiset::flatten order;
// for grouped instances, group by group). Bins are 1-based; 0 means
// "unpacked" and is only meaningful for grouped instances, where bins
// 1..k-1 carry the packed subsets.
struct PartitionWitness {
    std::vector<int> bin_of;
};

struct ScheduleWitness {
    struct Placement {
        int machine = 1;  // 1-based
        BigNat start;
    };
    std::vector<Placement> placements;  // per job
};

struct SubsetWitness {
    std::vector<bool> take;
};

using Witness = std::variant<PartitionWitness, ScheduleWitness, SubsetWitness>;

// True iff the witness satisfies the instance's defining constraints
// exactly. errors: ShapeMismatch
bool check_witness(const ProblemInstance& inst, const Witness& w);

}  // namespace forge
