#pragma once

#include <cstdint>
#include <vector>

#include "forge/problems.hpp"

namespace forge {

struct VssToSubsetSum {
    SubsetSumInstance instance;
    BigNat base;                     // B = 2 * n * max coordinate of t
    std::vector<std::size_t> kept;   // indices of vectors that survived the dominance filter
    PassMeta meta;
};

// Pack coordinates in base B = 2n*||t||_inf; vectors with a coordinate
// above the target are discarded first.
VssToSubsetSum vss_to_subset_sum(const VssInstance& inst);

struct VssMember {
    std::vector<std::uint64_t> carries;  // c_0..c_k with c_0 = c_k = 0
    VssInstance instance;
};

struct SubsetSumToVss {
    BigNat base;                     // B = ceil(t^(1/k)), bumped by one if B^k = t
    std::vector<std::size_t> kept;   // indices of items <= t
    std::vector<VssMember> members;  // one per feasible carry sequence
    PassMeta meta;
};

// Base-B digit split with one instance per carry sequence c in
// {0..n-1}^(k+1), c_0 = c_k = 0; members with a negative target coordinate
// are skipped (such carries are infeasible).
SubsetSumToVss subset_sum_to_vss(const std::vector<BigNat>& items, const BigNat& target, int k);

}  // namespace forge
