#include "forge/reduce_seth.hpp"

#include <algorithm>
#include <map>

#include "forge/error.hpp"

namespace forge {

namespace {

std::string block_III(int l) { return "III" + std::to_string(l); }
std::string block_IV(std::uint64_t p) { return "IV" + std::to_string(p); }

}  // namespace

CnfFormula pad_variables(const CnfFormula& f, int k, std::uint64_t a) {
    if (k < 2) throw Error("pad_variables: k >= 2 required");
    if (a < 1) throw Error("pad_variables: a >= 1 required");
    f.validate();
    CnfFormula out = f;
    std::uint64_t modulus = std::uint64_t(k - 1) * a;
    while (std::uint64_t(out.num_vars) % modulus != 0 || out.num_vars == 0) out.num_vars++;
    return out;
}

SethParams SethParams::make(const CnfFormula& phi, int k, std::uint64_t a, const Rational& mu) {
    if (k < 2) throw Error("seth: k >= 2 required");
    if (a < 1 || a > 20) throw Error("seth: a out of range");
    phi.validate();
    if (std::uint64_t(phi.num_vars) % (std::uint64_t(k - 1) * a) != 0 || phi.num_vars == 0)
        throw Error("seth: N must be a positive multiple of (k-1)*a; pad_variables first");

    SethParams p;
    p.phi = phi;
    p.k = k;
    p.a = a;
    p.mu = mu;
    p.delta = phi.max_occurrences();
    p.cap_width = std::max(3, phi.max_width());
    p.num_super = std::uint64_t(phi.num_vars) / a;
    std::uint64_t M = std::uint64_t(phi.num_clauses());
    p.q = p.num_super + M;
    std::uint64_t da = std::uint64_t(p.delta) * a;
    p.s = (std::uint64_t(1) << a) * std::max<std::uint64_t>(da, std::uint64_t(p.cap_width));
    p.n = std::uint64_t(k) * p.s * p.q;
    p.strength = int(std::max<std::uint64_t>(da, 2));
    p.B = behrend_set(std::uint64_t(1) << a, p.strength, mu);
    p.U = p.B.elements.back();
    p.logn = ceil_log2_at_least_one(BigNat(p.n));

    BigNat dau = BigNat(da) * p.U;
    BigNat iv_cap = BigNat(2) * dau;
    p.iv_width = ceil_log2_at_least_one(iv_cap < BigNat(2) ? BigNat(2) : iv_cap);

    std::uint64_t L = 10 * p.logn;
    std::vector<std::pair<std::string, std::uint64_t>> blocks;
    blocks.push_back({"I", L});
    blocks.push_back({"padI", L});
    blocks.push_back({"II", L});
    blocks.push_back({"padII", L});
    for (int l = 1; l <= k - 1; l++) {
        blocks.push_back({block_III(l), L});
        blocks.push_back({"pad" + block_III(l), L});
    }
    std::uint64_t positions = p.num_super / std::uint64_t(k - 1);
    for (std::uint64_t pos = 1; pos <= positions; pos++) blocks.push_back({block_IV(pos), p.iv_width});
    p.layout = build_layout(blocks);

    // W = (1 + 2^-10logn) * 2^((20(k-1)+30)logn + positions*iv_width);
    // the exponent is exactly the offset of the I-block.
    std::uint64_t i_offset = p.layout.block("I").offset;
    p.W = BigNat::two_pow(i_offset) + BigNat::two_pow(i_offset - L);
    return p;
}

int SethParams::group_of_super(std::uint64_t i) const {
    // l(i) = ceil(i*(k-1)*a/N)
    std::uint64_t N = std::uint64_t(phi.num_vars);
    return int((i * std::uint64_t(k - 1) * a + N - 1) / N);
}

std::uint64_t SethParams::pos_of_super(std::uint64_t i) const {
    std::uint64_t width = num_super / std::uint64_t(k - 1);
    std::uint64_t p = i % width;
    return p == 0 ? width : p;
}

const BigNat& SethParams::B_of(std::uint32_t alpha_index) const {
    return B.elements[alpha_index];
}

GammaStream::GammaStream(std::uint64_t positions, std::uint64_t cap, std::uint64_t total)
    : positions_(positions), cap_(cap), total_(total) {
    current_.assign(positions_, 0);
    // smallest lexicographic tuple: push the load as far right as possible
    done_ = !advance_from(0);
}

// fill positions idx..end with the lexicographically smallest completion of
// the remaining total; returns false if impossible
bool GammaStream::advance_from(std::size_t idx) {
    // remaining sum to distribute over positions idx..positions_-1
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < idx; i++) assigned += current_[i];
    if (assigned > total_) return false;
    std::uint64_t rest = total_ - assigned;
    if (rest > (positions_ - idx) * cap_) return false;
    // lexicographically smallest: minimal values at the front
    for (std::size_t i = idx; i < positions_; i++) {
        std::uint64_t later_cap = (positions_ - i - 1) * cap_;
        std::uint64_t v = rest > later_cap ? rest - later_cap : 0;
        current_[i] = v;
        rest -= v;
    }
    return rest == 0;
}

std::optional<GammaTuple> GammaStream::next() {
    if (done_) return std::nullopt;
    if (fresh_) {
        fresh_ = false;
        return GammaTuple{current_};
    }
    // next lexicographic tuple: increase the rightmost position that can
    // absorb one more while the suffix can shed one
    if (positions_ == 0) {
        done_ = true;
        return std::nullopt;
    }
    for (std::size_t i = positions_; i > 0;) {
        i--;
        // increment the rightmost position that has suffix mass to pull left
        std::uint64_t suffix_sum = 0;
        for (std::size_t j = i + 1; j < positions_; j++) suffix_sum += current_[j];
        if (suffix_sum == 0) continue;
        if (current_[i] + 1 > cap_) continue;
        current_[i]++;
        // suffix capacity can always absorb suffix_sum - 1
        if (!advance_from(i + 1)) throw InvariantViolation("gamma successor redistribution failed");
        return GammaTuple{current_};
    }
    done_ = true;
    return std::nullopt;
}

GammaStream gamma_tuples(const SethParams& params) {
    return GammaStream(params.num_super, std::uint64_t(params.delta) * params.a,
                       std::uint64_t(params.phi.num_clauses()));
}

std::vector<GammaTuple> collect_gamma_tuples(const SethParams& params) {
    auto stream = gamma_tuples(params);
    std::vector<GammaTuple> out;
    while (auto t = stream.next()) out.push_back(*t);
    return out;
}

GroupedInstance build_seth_instance(const SethParams& params, const GammaTuple& gamma) {
    const CnfFormula& phi = params.phi;
    int k = params.k;
    std::uint64_t a = params.a;
    std::uint64_t M = std::uint64_t(phi.num_clauses());
    if (gamma.gamma.size() != params.num_super) throw ShapeMismatch("gamma tuple size");
    std::uint64_t gsum = 0;
    for (auto g : gamma.gamma) {
        if (g > std::uint64_t(params.delta) * a) throw ShapeMismatch("gamma entry above delta*a");
        gsum += g;
    }
    if (gsum != M) throw ShapeMismatch("gamma sum != M");

    BigNat dau = BigNat(std::uint64_t(params.delta) * a) * params.U;

    auto assemble_item = [&](std::uint64_t group_1based, int iii_bin, std::uint64_t iv_pos,
                             const BigNat& iv_value) {
        BlockWriter w(params.layout);
        w.set("I", BigNat(1));
        w.set("II", BigNat(group_1based));
        if (iii_bin > 0) w.set("III" + std::to_string(iii_bin), BigNat(1));
        if (iv_pos > 0) w.set("IV" + std::to_string(iv_pos), iv_value);
        return assemble(w);
    };

    GroupedInstance inst;
    inst.k = k;
    inst.s = params.s;
    inst.W = params.W;
    inst.weak_flag = true;
    inst.set_flag = false;

    std::uint64_t copies_dummy = std::uint64_t(k - 1) * params.s - 1;

    // supervariable groups G_1..G_{N/a}
    for (std::uint64_t i = 1; i <= params.num_super; i++) {
        Multiset g;
        int l = params.group_of_super(i);
        std::uint64_t pos = params.pos_of_super(i);
        std::uint32_t assignments = std::uint32_t(1) << a;
        BigNat smallest_alpha_value;
        for (std::uint32_t alpha = 0; alpha < assignments; alpha++) {
            BigNat iv = dau - BigNat(gamma.gamma[std::size_t(i - 1)]) * params.B_of(alpha);
            BigNat v = assemble_item(i, l, pos, iv);
            if (alpha == 0) smallest_alpha_value = v;
            g.add(v);
        }
        BigNat dummy = assemble_item(i, 0, 0, BigNat(0));
        g.add(dummy, copies_dummy);
        std::uint64_t pad = std::uint64_t(k) * params.s - g.size();
        g.add(smallest_alpha_value, pad);
        inst.groups.push_back(std::move(g));
    }

    // clause groups G_{N/a+1}..G_q
    for (std::uint64_t j = 1; j <= M; j++) {
        Multiset g;
        const Clause& clause = phi.clauses[std::size_t(j - 1)];
        std::vector<int> cvars = clause.variables();
        // supervariables appearing in the clause
        std::vector<std::uint64_t> supers;
        for (int v : cvars) {
            std::uint64_t sv = (std::uint64_t(v) - 1) / a + 1;
            if (std::find(supers.begin(), supers.end(), sv) == supers.end()) supers.push_back(sv);
        }
        std::sort(supers.begin(), supers.end());

        std::optional<BigNat> smallest;
        std::uint64_t count = 0;
        for (std::uint64_t sv : supers) {
            int l = params.group_of_super(sv);
            std::uint64_t pos = params.pos_of_super(sv);
            std::uint32_t assignments = std::uint32_t(1) << a;
            for (std::uint32_t alpha = 0; alpha < assignments; alpha++) {
                // does alpha on supervariable sv satisfy the clause?
                bool sat = false;
                for (int lit : clause.literals) {
                    int v = lit < 0 ? -lit : lit;
                    std::uint64_t owner = (std::uint64_t(v) - 1) / a + 1;
                    if (owner != sv) continue;
                    std::uint64_t offset = (std::uint64_t(v) - 1) % a;  // position within sv
                    bool val = (alpha >> offset) & 1;
                    if (lit > 0 ? val : !val) sat = true;
                }
                if (!sat) continue;
                BigNat v = assemble_item(params.num_super + j, l, pos, params.B_of(alpha));
                if (!smallest) smallest = v;
                g.add(v);
                count++;
            }
        }
        if (!smallest) throw InvariantViolation("clause with no satisfying supervariable assignment");
        BigNat dummy = assemble_item(params.num_super + j, 0, 0, BigNat(0));
        g.add(dummy, copies_dummy);
        std::uint64_t pad = std::uint64_t(k) * params.s - g.size();
        g.add(*smallest, pad);
        inst.groups.push_back(std::move(g));
    }

    // targets t_1..t_{k-1}
    std::uint64_t positions = params.num_super / std::uint64_t(k - 1);
    BigNat bs(0);
    for (std::uint64_t b = 1; b <= params.q; b++) bs += BigNat(b) * BigNat(params.s);
    std::vector<BigNat> targets;
    for (int l = 1; l <= k - 1; l++) {
        BlockWriter w(params.layout);
        w.set("I", BigNat(params.s) * BigNat(params.q));
        w.set("II", bs);
        BigNat iii(positions);
        for (std::uint64_t i = 1; i <= params.num_super; i++)
            if (params.group_of_super(i) == l) iii += BigNat(gamma.gamma[std::size_t(i - 1)]);
        w.set(block_III(l), iii);
        for (std::uint64_t pos = 1; pos <= positions; pos++) w.set(block_IV(pos), dau);
        targets.push_back(assemble(w));
    }
    inst.targets = targets;
    inst.validate();
    return inst;
}

std::vector<std::pair<GammaTuple, GroupedInstance>> seth_instance_family(const SethParams& params) {
    std::vector<std::pair<GammaTuple, GroupedInstance>> family;
    auto stream = gamma_tuples(params);
    while (auto g = stream.next()) family.push_back({*g, build_seth_instance(params, *g)});
    return family;
}

}  // namespace forge
