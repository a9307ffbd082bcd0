#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "forge/bignat.hpp"
#include "forge/problems.hpp"
#include "forge/rational.hpp"

namespace forge {

// Strong k-average-free set: for any a,b in {0..k} and x_1..x_a, x in B,
// x_1 + ... + x_a = b*x forces a = b and x_1 = ... = x_a = x.
struct AvgFreeSet {
    std::vector<BigNat> elements;  // sorted, distinct, in [1..U]
    int k = 2;                     // strength
    BigNat U;                      // construction bound 2*(2ku)^d
    std::uint64_t u = 0;
    std::uint64_t r_norm_sq = 0;   // chosen squared-norm class
    std::uint64_t d = 0;
};

// Constant-norm lattice vectors embedded in base 2ku. d = ceil(2/mu)+2,
// u = ceil((dn)^(1/(d-2))); r is the squared-norm class maximizing the
// class size (ties toward smaller r); when the class exceeds n, the n
// lexicographically smallest vectors are kept. Deterministic in (n,k,mu).
AvgFreeSet behrend_set(std::uint64_t n, int k, const Rational& mu);

struct AvgFreeCounterexample {
    int a = 0;
    int b = 0;
    std::vector<BigNat> xs;
    BigNat x;
};

struct AvgFreeReport {
    bool ok = false;
    std::optional<AvgFreeCounterexample> counterexample;
};

// Brute-force oracle for the definition. Guard: |B|^k <= 10^8.
// errors: TooLarge
AvgFreeReport verify_avg_free(const std::vector<BigNat>& elements, int k);

// Multiset P with Sigma(P) = tau such that every composition
// t_1 + ... + t_k = tau admits a partition of P with part sums t_i.
struct FillerMultiset {
    Multiset P;
    BigNat tau;
    int k = 2;
    // construction internals, needed by split_filler
    bool unary = false;       // tau < k^2: P is tau copies of 1
    std::uint64_t h = 0;
    BigNat a;
    std::uint64_t c = 0;
};

FillerMultiset filler_multiset(const BigNat& tau, int k);

// Witness over P's occurrences realizing the given composition (bins keyed
// by the original target order). errors: BadCompositionSum
PartitionWitness split_filler(const FillerMultiset& filler, const std::vector<BigNat>& targets);

}  // namespace forge
