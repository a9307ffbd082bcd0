#pragma once

#include "forge/problems.hpp"

namespace forge {

// Grouped k-way Partition (the exact, non-promise variant) -> P_k || sum
// U_j with threshold 0: job per item, due date min(mu, i*s*W) by group.
ReductionOutput grouped_to_sumUj0(const GroupedInstance& inst);

// "Reverse the course of time": P_k|r_j|Cmax(<=M) <-> P_k||sum U_j = 0 via
// d_j = M - r_j (forward, Decided(no) when some r_j > M) and r_j = M - d_j
// with M = max d_j (backward).
ReductionOutput reverse_time(const SchedulingInstance& inst);

// Sort by release date, drop the common offset and every forced idle gap
// r_j - sum_{j'<j} p_j'; the threshold shifts down by the removed total.
ReductionOutput normalize_release_dates(const SchedulingInstance& inst);

// Grouped k-way Partition -> P_k || sum w_j C_j with w_j = p_j*Wt + (q-i).
ReductionOutput grouped_to_wjcj(const GroupedInstance& inst);

// Weak Grouped k-way Partition -> P_{k-1} || sum p_j U_j with threshold mu.
ReductionOutput weak_grouped_to_pjUj(const GroupedInstance& inst);

// Lmax <= l / Tmax <= l -> sum U_j = 0 via d_j' = d_j + l; Decided(no) when
// l < -min d_j (the shifted due dates would be negative and the job with
// the smallest due date is always late).
ReductionOutput lmax_tmax_shift(const SchedulingInstance& inst);

// Forward-direction schedule for grouped_to_sumUj0 / grouped_to_wjcj /
// weak_grouped_to_pjUj: jobs of S_{i,l} on machine l in group order,
// ascending processing time within a group, tardy/unpacked jobs last.
ScheduleWitness lift_grouped_schedule(const GroupedInstance& inst, const PartitionWitness& w,
                                      int machines);

}  // namespace forge
