#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "forge/bignat.hpp"
#include "forge/problems.hpp"

namespace forge {

struct SolveReport {
    bool yes = false;
    std::optional<Witness> witness;
    std::uint64_t states_explored = 0;
    bool budget_exceeded = false;
    // exact objective optimum, when the solver computes one and it is integral
    std::optional<SignedBig> optimum;
};

std::uint64_t default_budget();  // REDUCE_BUDGET env override, else 10^7

// Exhaustive over 2^N assignments; witness is the first satisfying
// assignment in lexicographic order (x_1 most significant).
// errors: GuardExceeded (N > 24)
SolveReport sat_bruteforce(const CnfFormula& f);

// Pruned DFS assigning items (descending value) to bins. Exact for the
// targets, equal-sum and bin-packing modes of PartitionInstance.
// errors: GuardExceeded (node budget)
SolveReport partition_targets_bruteforce(const PartitionInstance& inst,
                                         std::uint64_t budget = default_budget());

// Equal-sum decider specialised to Bounded instances: the range forces
// every bin to take exactly n/k items, so items can be rescaled by their
// gap below the maximum and the last two bins matched meet-in-the-middle.
// Falls back to the generic DFS when the rescaled values do not fit 64 bits.
SolveReport bounded_partition_bruteforce(const PartitionInstance& inst,
                                         std::uint64_t budget = default_budget());

// O(n T^(k-1)) dynamic program over the loads of the first k-1 bins.
// errors: GuardExceeded (table exceeds budget or values exceed 64 bits)
SolveReport binpacking_dp(const PartitionInstance& inst, std::uint64_t budget = default_budget());

// O(n^2 T^(k-1)) dynamic program for P_k/Q_k || sum U_j in EDD order,
// storing the minimum load of the k-th machine.
// errors: GuardExceeded
SolveReport sum_uj_dp(const SchedulingInstance& inst, std::uint64_t budget = default_budget());

// Exact optimum of any supported objective by enumeration: machine
// assignments with the optimal per-machine order (earliest release first
// for Cmax with release dates, EDD for due-date objectives, Smith's rule
// for weighted completion times), tardy-set enumeration for sum p_j U_j
// and sum U_j.
// errors: GuardExceeded
SolveReport sched_bruteforce(const SchedulingInstance& inst, std::uint64_t budget = default_budget());

// YES-case search for grouped instances: per group, disjoint size-s
// sub-multisets per bin via multiplicity-vector enumeration with
// running-sum pruning.
SolveReport check_grouped_yes(const GroupedInstance& inst, std::uint64_t budget = default_budget());

// Existence search for the relaxed (NO-case) subsets; yes = subsets exist,
// so the instance is in the NO case iff this reports no.
SolveReport check_grouped_no_condition(const GroupedInstance& inst,
                                       std::uint64_t budget = default_budget());

enum class WeakVerdict { Yes, No, PromiseViolated };
WeakVerdict solve_weak_grouped(const GroupedInstance& inst, std::uint64_t budget = default_budget());

// DP over reachable residual target vectors, O(n * prod(t_c + 1)).
SolveReport vss_dp(const VssInstance& inst, std::uint64_t budget = default_budget());
SolveReport vss_bruteforce(const VssInstance& inst, std::uint64_t budget = default_budget());

SolveReport subset_sum_bruteforce(const SubsetSumInstance& inst,
                                  std::uint64_t budget = default_budget());
SolveReport subset_sum_dp(const SubsetSumInstance& inst, std::uint64_t budget = default_budget());

// Dispatcher used by the CLI and the harness: picks a DP when the instance
// fits one, the bounded-specialised enumerator for bounded equal-sum
// instances, the pruned DFS otherwise.
SolveReport solve_auto(const ProblemInstance& inst, std::uint64_t budget = default_budget());

}  // namespace forge
