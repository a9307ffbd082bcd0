#include "forge/vss.hpp"

#include <functional>

#include "forge/error.hpp"

namespace forge {

VssToSubsetSum vss_to_subset_sum(const VssInstance& inst) {
    inst.validate();
    VssToSubsetSum out;
    out.meta.lemma_tag = "VSS -> SubsetSum";
    out.meta.param_preserving = false;
    out.meta.n_in = inst.vectors.size();
    out.meta.T_in = inst.parameter_T();

    for (std::size_t i = 0; i < inst.vectors.size(); i++) {
        bool dominated = false;
        for (int c = 0; c < inst.k; c++)
            if (inst.vectors[i][std::size_t(c)] > inst.target[std::size_t(c)]) dominated = true;
        if (!dominated) out.kept.push_back(i);
    }

    BigNat t_inf(0);
    for (const auto& c : inst.target)
        if (c > t_inf) t_inf = c;
    BigNat B = BigNat(2) * BigNat(std::uint64_t(out.kept.size())) * t_inf;
    if (B < BigNat(1)) B = BigNat(1);
    out.base = B;

    std::vector<BigNat> powers(std::size_t(inst.k));
    powers[0] = BigNat(1);
    for (int c = 1; c < inst.k; c++) powers[std::size_t(c)] = powers[std::size_t(c - 1)] * B;

    for (std::size_t i : out.kept) {
        BigNat packed(0);
        for (int c = 0; c < inst.k; c++)
            packed += inst.vectors[i][std::size_t(c)] * powers[std::size_t(c)];
        out.instance.items.push_back(packed);
    }
    BigNat t_hat(0);
    for (int c = 0; c < inst.k; c++) t_hat += inst.target[std::size_t(c)] * powers[std::size_t(c)];
    out.instance.target = t_hat;

    out.meta.n_out = out.instance.items.size();
    out.meta.T_out = t_hat;
    return out;
}

SubsetSumToVss subset_sum_to_vss(const std::vector<BigNat>& items, const BigNat& target, int k) {
    if (k < 1) throw Error("subset_sum_to_vss: k >= 1 required");
    SubsetSumToVss out;
    out.meta.lemma_tag = "SubsetSum -> VSS";
    out.meta.param_preserving = false;
    out.meta.n_in = items.size();
    out.meta.T_in = target;

    for (std::size_t i = 0; i < items.size(); i++)
        if (items[i] <= target) out.kept.push_back(i);
    std::uint64_t n = out.kept.size();

    BigNat B = target.is_zero() ? BigNat(1) : iroot_ceil(target, std::uint64_t(k));
    // digits live in {0..B-1}; t = B^k has no such k-digit expansion
    if (B.pow(std::uint64_t(k)) == target && !target.is_zero()) B += BigNat(1);
    if (B < BigNat(1)) B = BigNat(1);
    out.base = B;

    auto digits = [&](const BigNat& v) {
        std::vector<BigNat> d(static_cast<std::size_t>(k));
        BigNat rest = v;
        for (int c = 0; c < k; c++) {
            d[std::size_t(c)] = rest.mod(B);
            rest = rest.div(B);
        }
        if (!rest.is_zero()) throw InvariantViolation("value not representable in k digits");
        return d;
    };

    std::vector<std::vector<BigNat>> item_digits;
    for (std::size_t i : out.kept) item_digits.push_back(digits(items[i]));
    std::vector<BigNat> t_digits = digits(target);

    // carries c_0..c_k with c_0 = c_k = 0, middle entries in {0..n-1}
    std::uint64_t cap = n > 0 ? n : 1;
    std::vector<std::uint64_t> carry(std::size_t(k) + 1, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == k) {
            VssMember member;
            member.carries = carry;
            member.instance.k = k;
            member.instance.vectors = item_digits;
            member.instance.target.resize(std::size_t(k));
            for (int c = 1; c <= k; c++) {
                // t_c + carry_c * B - carry_{c-1}
                BigNat v = t_digits[std::size_t(c - 1)] + BigNat(carry[std::size_t(c)]) * B;
                BigNat prev(carry[std::size_t(c - 1)]);
                if (v < prev) return;  // negative coordinate: infeasible carry
                member.instance.target[std::size_t(c - 1)] = v - prev;
            }
            out.members.push_back(std::move(member));
            return;
        }
        for (std::uint64_t c = 0; c < cap; c++) {
            carry[std::size_t(pos)] = c;
            rec(pos + 1);
        }
        carry[std::size_t(pos)] = 0;
    };
    rec(1);  // positions 1..k-1 free; c_0 = c_k = 0

    out.meta.n_out = n;
    BigNat max_T(0);
    for (const auto& m : out.members) {
        BigNat t1(0);
        for (const auto& c : m.instance.target) t1 += c;
        if (t1 > max_T) max_T = t1;
    }
    out.meta.T_out = max_T;
    return out;
}

}  // namespace forge
