#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "forge/bitblock.hpp"
#include "forge/problems.hpp"

namespace forge {

// Communication tuple (C_i, C_j, x): i < j, variable x shared by both
// clauses. Internal when both clauses fall into the same bin.
struct CommunicationTuple {
    int i = 0;
    int j = 0;
    int x = 0;
    bool external = false;
};

// Assignment of communication tuples to 3-bit channels; a channel may serve
// two tuples only if their bin pairs are disjoint.
struct ChannelPlan {
    std::vector<CommunicationTuple> tuples;
    std::vector<std::size_t> channel_of;            // per tuple
    std::uint64_t num_channels = 0;                 // layout capacity 6*Delta*M/(k-1)
    std::vector<std::vector<int>> full_bins;        // per channel, bins marked full
};

struct EthItem {
    enum class Kind { Assignment, Dummy, DummyPrime };
    Kind kind = Kind::Assignment;
    int i = 0;                    // clause index (first clause for dummies)
    int j = 0;                    // second clause (dummies only)
    int x = 0;                    // shared variable (dummies only)
    std::uint32_t alpha_mask = 0; // bit t = value of the t-th (sorted) clause variable
    BigNat value;

    std::string id() const;
};

struct EthArtifacts {
    CnfFormula padded;  // M' divisible by k-1
    int k = 2;
    int delta = 0;      // recomputed from the padded formula
    std::uint64_t logM = 1;
    BitBlockLayout layout;
    ChannelPlan channels;
    std::vector<EthItem> items;
    std::vector<BigNat> targets;  // t_1..t_k
    std::vector<int> group_of;    // per clause (1-based into padded), l(i)
    std::vector<int> pos_of;      // per clause, p(i) in [1..M/(k-1)]
};

// Adds tautology clauses (x1 v ~x1) until the clause count divides k-1.
CnfFormula pad_formula(const CnfFormula& f, int k);

// Greedy channel assignment; every tuple gets a channel open on both its
// bins. errors: AllocationFailed (impossible by the counting argument)
ChannelPlan allocate_channels(const CnfFormula& padded, int k);

// The full construction: one item per (clause, satisfying assignment), two
// dummies per external tuple, targets t_1..t_k. Pads the formula itself if
// the clause count does not divide k-1.
std::pair<PartitionInstance, EthArtifacts> build_eth_instance(const CnfFormula& f, int k);

// Forward-direction witness: packs z(i, alpha_i) into bin l(i), dummies by
// the shared variable's value, everything else into the dumpster bin k.
// errors: NotSatisfying
PartitionWitness lift_eth_assignment(const EthArtifacts& art, const Assignment& alpha);

}  // namespace forge
