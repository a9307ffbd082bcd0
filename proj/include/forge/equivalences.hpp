#pragma once

#include <string>

#include "forge/problems.hpp"

namespace forge {

// Whitelisted special-case embeddings (identity re-taggings).
// errors: NotASpecialCaseEdge
ReductionOutput embed_special_case(const ProblemInstance& inst, const std::string& target_kind);

// k-way Partition -> Bin Packing with T = Sigma(X)/k; Decided(no) when the
// sum is not divisible by k.
ReductionOutput partition_to_binpacking(const PartitionInstance& inst);

// Multiset Bin Packing -> Multiset Partition by adding the filler multiset
// for tau = kT - Sigma(X); Decided(no) when Sigma(X) > kT.
ReductionOutput binpacking_to_partition(const PartitionInstance& inst);

// Multiset Partition with Targets -> Multiset Partition via one dummy
// T - t_i per bin, T = 3 * max targets.
ReductionOutput targets_to_plain_multiset(const PartitionInstance& inst);

// Multiset Partition -> Bounded Multiset Partition: shift every item by
// W = (nk)^10 * max(X) and add n(k-1) copies of W.
ReductionOutput multiset_to_bounded(const PartitionInstance& inst);

// Bounded Multiset -> Bounded (set) Partition via the y/z twin items.
ReductionOutput bounded_multiset_to_set(const PartitionInstance& inst);

// Q_k||Cmax (threshold M) -> P_k||Cmax with dummy jobs M' - floor(s_i M).
ReductionOutput qcmax_to_pcmax(const SchedulingInstance& inst);

// Bounded Partition -> Weak Grouped k-way Partition with q = 1.
// errors: IndivisibleGroup
ReductionOutput bounded_to_weak_grouped_q1(const PartitionInstance& inst);

// Weak Grouped with Targets (multiset) -> Weak Grouped (multiset) via the
// extra group of filling items f_l and dummies d.
ReductionOutput weak_targets_to_weak_multiset(const GroupedInstance& inst);

// Weak Grouped multiset -> Weak Grouped sets via per-group y/z twins.
ReductionOutput weak_multiset_to_weak_set(const GroupedInstance& inst);

}  // namespace forge
