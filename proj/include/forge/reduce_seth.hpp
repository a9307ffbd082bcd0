#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "forge/bitblock.hpp"
#include "forge/gadgets.hpp"
#include "forge/problems.hpp"
#include "forge/rational.hpp"

namespace forge {

// Parameters of the K-SAT construction: supervariables of a variables,
// q = N/a + M groups of size k*s, and a strong average-free set indexed by
// supervariable assignments.
struct SethParams {
    CnfFormula phi;  // padded so N is a multiple of (k-1)*a
    int k = 2;
    std::uint64_t a = 1;
    Rational mu;

    int delta = 0;       // max clauses per variable
    int cap_width = 3;   // max(3, max clause width)
    std::uint64_t num_super = 0;  // N/a
    std::uint64_t q = 0;          // N/a + M
    std::uint64_t s = 0;          // 2^a * max(delta*a, cap_width)
    std::uint64_t n = 0;          // k*s*q
    int strength = 2;             // max(delta*a, 2)
    AvgFreeSet B;                 // size 2^a
    BigNat U;                     // max(B)
    std::uint64_t logn = 1;       // ceil log2 max(n,2)
    std::uint64_t iv_width = 1;   // ceil log2 max(2*delta*a*U, 2)
    BigNat W;                     // upper end of the item range
    BitBlockLayout layout;

    static SethParams make(const CnfFormula& phi, int k, std::uint64_t a, const Rational& mu);

    // supervariable -> bin / position maps
    int group_of_super(std::uint64_t i) const;
    std::uint64_t pos_of_super(std::uint64_t i) const;
    // element of B for an assignment of a supervariable's variables
    // (little-endian: bit j-1 of the index is the j-th variable)
    const BigNat& B_of(std::uint32_t alpha_index) const;
};

// Adds fresh variables (appearing in no clause) until N divides (k-1)*a.
CnfFormula pad_variables(const CnfFormula& f, int k, std::uint64_t a);

// gamma_i in {0..delta*a} with sum M, enumerated lexicographically.
struct GammaTuple {
    std::vector<std::uint64_t> gamma;
};

class GammaStream {
  public:
    GammaStream(std::uint64_t positions, std::uint64_t cap, std::uint64_t total);
    std::optional<GammaTuple> next();

  private:
    bool advance_from(std::size_t idx);
    std::uint64_t positions_, cap_, total_;
    std::vector<std::uint64_t> current_;
    bool done_ = false;
    bool fresh_ = true;
};

GammaStream gamma_tuples(const SethParams& params);
std::vector<GammaTuple> collect_gamma_tuples(const SethParams& params);

// One Weak Grouped k-way Partition (multiset, with targets) instance per
// gamma tuple.
GroupedInstance build_seth_instance(const SethParams& params, const GammaTuple& gamma);

std::vector<std::pair<GammaTuple, GroupedInstance>> seth_instance_family(const SethParams& params);

}  // namespace forge
