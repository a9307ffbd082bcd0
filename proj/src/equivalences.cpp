#include "forge/equivalences.hpp"

#include <algorithm>

#include "forge/error.hpp"
#include "forge/gadgets.hpp"
#include "forge/solvers.hpp"

namespace forge {

namespace {

PassMeta meta_for(const std::string& tag, std::uint64_t c1, std::uint64_t c2,
                  const ProblemInstance& in) {
    PassMeta m;
    m.lemma_tag = tag;
    m.c1 = c1;
    m.c2 = c2;
    m.T_in = parameter_of(in);
    if (const auto* p = std::get_if<PartitionInstance>(&in))
        m.n_in = p->n_items();
    else if (const auto* g = std::get_if<GroupedInstance>(&in))
        m.n_in = g->n_items();
    else if (const auto* s = std::get_if<SchedulingInstance>(&in))
        m.n_in = s->jobs.size();
    else if (const auto* v = std::get_if<VssInstance>(&in))
        m.n_in = v->vectors.size();
    else
        m.n_in = std::get<SubsetSumInstance>(in).items.size();
    return m;
}

void finish_meta(PassMeta& m, const ProblemInstance& out) {
    m.T_out = parameter_of(out);
    if (const auto* p = std::get_if<PartitionInstance>(&out))
        m.n_out = p->n_items();
    else if (const auto* g = std::get_if<GroupedInstance>(&out))
        m.n_out = g->n_items();
    else if (const auto* s = std::get_if<SchedulingInstance>(&out))
        m.n_out = s->jobs.size();
    else if (const auto* v = std::get_if<VssInstance>(&out))
        m.n_out = v->vectors.size();
    else
        m.n_out = std::get<SubsetSumInstance>(out).items.size();
}

ReductionOutput finish(ProblemInstance out, PassMeta meta) {
    validate(out);
    finish_meta(meta, out);
    return ReductionOutput::of(std::move(out), std::move(meta));
}

// Decided verdict from the weak-grouped brute force; for promise inputs any
// answer is correct on promise violations, we answer no.
ReductionOutput decide_grouped(const GroupedInstance& g, PassMeta meta, const std::string& why) {
    WeakVerdict v = solve_weak_grouped(g);
    return ReductionOutput::decide(v == WeakVerdict::Yes, why, std::move(meta));
}

BigNat pow_u64(std::uint64_t base, std::uint64_t e) { return BigNat(base).pow(e); }

}  // namespace

// ---------------------------------------------------------------------------

ReductionOutput embed_special_case(const ProblemInstance& inst, const std::string& target_kind) {
    std::string from = kind_of(inst);
    PassMeta meta = meta_for("special-case " + from + " -> " + target_kind, 2, 2, inst);

    if (const auto* p = std::get_if<PartitionInstance>(&inst)) {
        PartitionInstance out = *p;
        // bounded is a special case of plain partition
        if ((target_kind == "partition" || target_kind == "multiset_partition") && p->is_bounded() &&
            !p->has_targets() && !p->is_bin_packing()) {
            out.bounded_W.reset();
            if (target_kind == "multiset_partition") out.set_flag = false;
            return finish(out, meta);
        }
        // plain partition is a special case of partition with targets
        if ((target_kind == "partition_targets" || target_kind == "multiset_partition_targets") &&
            !p->has_targets() && !p->is_bin_packing()) {
            BigNat total = p->items.sum();
            BigNat kk(std::uint64_t(p->k));
            if (!total.divisible_by(kk))
                return ReductionOutput::decide(false, "total not divisible by k", meta);
            out.bounded_W.reset();
            out.targets = std::vector<BigNat>(std::size_t(p->k), total.div(kk));
            if (target_kind == "multiset_partition_targets") out.set_flag = false;
            return finish(out, meta);
        }
        // set variants are special cases of multiset variants
        if (target_kind == "multiset_" + from && p->set_flag) {
            out.set_flag = false;
            return finish(out, meta);
        }
        // bin packing is the identical-machines makespan problem
        if (target_kind == "scheduling_P_cmax" && p->is_bin_packing()) {
            SchedulingInstance sched;
            sched.machines.k = p->k;
            sched.objective = Objective::Cmax;
            sched.lambda = SignedBig::of(*p->capacity);
            for (const auto& x : p->items.flatten())
                if (!x.is_zero()) sched.jobs.push_back(Job{x, {}, {}, {}});
            return finish(sched, meta);
        }
    }
    if (const auto* g = std::get_if<GroupedInstance>(&inst)) {
        GroupedInstance out = *g;
        if (!g->weak_flag && (target_kind == "weak_grouped_partition" ||
                              target_kind == "multiset_weak_grouped_partition")) {
            out.weak_flag = true;
            if (target_kind == "multiset_weak_grouped_partition") out.set_flag = false;
            return finish(out, meta);
        }
        if (g->set_flag && target_kind == "multiset_" + from.substr(0)) {
            out.set_flag = false;
            return finish(out, meta);
        }
        if (!g->targets && (target_kind == "multiset_weak_grouped_partition_targets")) {
            Rational mu = g->mu();
            if (!mu.is_integer())
                return ReductionOutput::decide(false, "average load not integral", meta);
            out.weak_flag = true;
            out.set_flag = false;
            out.targets = std::vector<BigNat>(std::size_t(g->k) - 1, mu.floor());
            return finish(out, meta);
        }
    }
    if (const auto* s = std::get_if<SchedulingInstance>(&inst)) {
        if (s->objective == Objective::Cmax && !s->machines.uniform()) {
            bool has_releases = false;
            for (const auto& j : s->jobs)
                if (j.r) has_releases = true;
            // identical-machines makespan is multiset bin packing
            if (target_kind == "multiset_bin_packing" && !has_releases) {
                PartitionInstance out;
                out.k = s->machines.k;
                out.set_flag = false;
                out.capacity = s->lambda.negative ? BigNat(0) : s->lambda.magnitude;
                std::vector<BigNat> vals;
                for (const auto& j : s->jobs) vals.push_back(j.p);
                out.items = Multiset::from_values(std::move(vals));
                return finish(out, meta);
            }
            // identical machines are uniform machines with unit speeds
            if (target_kind == "scheduling_Q_cmax" && !has_releases) {
                SchedulingInstance out = *s;
                out.machines.speeds.assign(std::size_t(s->machines.k), Rational(BigNat(1)));
                return finish(out, meta);
            }
        }
        // sum U_j = 0 is the special case Lambda = 0 of sum U_j; re-tag only
        if (target_kind == "scheduling_P_sum_uj" && s->objective == Objective::SumUj)
            return finish(*s, meta);
    }
    throw NotASpecialCaseEdge(from + " -> " + target_kind);
}

ReductionOutput partition_to_binpacking(const PartitionInstance& inst) {
    if (inst.has_targets() || inst.is_bin_packing())
        throw Error("partition_to_binpacking expects a plain partition instance");
    PassMeta meta = meta_for("Part -> BP", 1, 1, inst);
    BigNat total = inst.items.sum();
    BigNat kk(std::uint64_t(inst.k));
    if (!total.divisible_by(kk))
        return ReductionOutput::decide(false, "total not divisible by k", meta);
    PartitionInstance out;
    out.items = inst.items;
    out.k = inst.k;
    out.set_flag = inst.set_flag;
    out.capacity = total.div(kk);
    return finish(out, meta);
}

ReductionOutput binpacking_to_partition(const PartitionInstance& inst) {
    if (!inst.is_bin_packing()) throw Error("binpacking_to_partition expects a bin packing instance");
    PassMeta meta = meta_for("MultiBP -> MultiPart", 48, 2, inst);
    BigNat total = inst.items.sum();
    BigNat kT = BigNat(std::uint64_t(inst.k)) * *inst.capacity;
    if (total > kT) return ReductionOutput::decide(false, "items exceed k*T", meta);
    BigNat tau = kT - total;
    PartitionInstance out;
    out.items = inst.items;
    out.k = inst.k;
    out.set_flag = inst.set_flag;
    if (!tau.is_zero()) {
        FillerMultiset filler = filler_multiset(tau, inst.k);
        for (const auto& [v, m] : filler.P.entries) out.items.add(v, m);
        out.set_flag = false;
    }
    return finish(out, meta);
}

ReductionOutput targets_to_plain_multiset(const PartitionInstance& inst) {
    if (!inst.has_targets()) throw Error("targets_to_plain_multiset expects targets");
    PassMeta meta = meta_for("MultiPartTargets -> MultiPart", 8, 2, inst);
    BigNat total = inst.items.sum();
    BigNat tsum(0);
    BigNat tmax(0);
    for (const auto& t : *inst.targets) {
        tsum += t;
        if (t > tmax) tmax = t;
    }
    if (total != tsum)
        return ReductionOutput::decide(false, "targets do not sum to the item total", meta);
    if (tmax.is_zero())
        return ReductionOutput::decide(total.is_zero(), "degenerate all-zero targets", meta);
    BigNat T = BigNat(3) * tmax;
    PartitionInstance out;
    out.items = inst.items;
    out.k = inst.k;
    out.set_flag = false;
    for (const auto& t : *inst.targets) out.items.add(T - t);
    return finish(out, meta);
}

ReductionOutput multiset_to_bounded(const PartitionInstance& inst) {
    if (inst.has_targets() || inst.is_bin_packing())
        throw Error("multiset_to_bounded expects a plain partition instance");
    PassMeta meta = meta_for("MultiPart -> MultiBoundedPart", 4, 40, inst);
    BigNat total = inst.items.sum();
    BigNat kk(std::uint64_t(inst.k));
    if (!total.divisible_by(kk))
        return ReductionOutput::decide(false, "total not divisible by k", meta);
    std::uint64_t n = inst.n_items();
    if (n == 0) return ReductionOutput::decide(true, "no items", meta);
    BigNat maxv = inst.items.max_value();
    if (maxv.is_zero()) return ReductionOutput::decide(true, "all items zero", meta);

    std::uint64_t m = n * std::uint64_t(inst.k);
    BigNat m10 = pow_u64(m, 10);
    BigNat W = m10 * maxv;
    PartitionInstance out;
    out.k = inst.k;
    out.set_flag = false;
    for (const auto& [v, mult] : inst.items.entries) out.items.add(v + W, mult);
    out.items.add(W, n * std::uint64_t(inst.k - 1));
    // W' = floor(W / (1 - 1/m^10)) = floor(W * m^10 / (m^10 - 1))
    out.bounded_W = (W * m10).div(m10 - BigNat(1));
    return finish(out, meta);
}

ReductionOutput bounded_multiset_to_set(const PartitionInstance& inst) {
    if (!inst.is_bounded() || inst.has_targets() || inst.is_bin_packing())
        throw Error("bounded_multiset_to_set expects a bounded partition instance");
    PassMeta meta = meta_for("MultiBoundedPart -> BoundedPart", 2, 25, inst);
    std::uint64_t n = inst.n_items();
    const BigNat& W = *inst.bounded_W;
    if (n < 2 || W < pow_u64(n, 10)) {
        SolveReport r = bounded_partition_bruteforce(inst);
        return ReductionOutput::decide(r.yes, "small instance solved directly", meta);
    }
    BigNat n20 = pow_u64(n, 20);
    BigNat n7 = pow_u64(n, 7);
    BigNat n5 = pow_u64(n, 5);
    BigNat base = W * n20;
    PartitionInstance out;
    out.k = inst.k;
    out.set_flag = true;
    auto flat = inst.items.flatten();
    for (std::uint64_t j = 1; j <= n; j++) {
        const BigNat& x = flat[std::size_t(j - 1)];
        // y_j = W n^20 + (x - W) n^7 - n^5 + j, with x <= W
        BigNat y = base + BigNat(j) - n5 - (W - x) * n7;
        BigNat z = base - BigNat(j);
        out.items.add(y);
        out.items.add(z);
    }
    out.bounded_W = base;
    return finish(out, meta);
}

ReductionOutput qcmax_to_pcmax(const SchedulingInstance& inst) {
    if (inst.objective != Objective::Cmax || !inst.machines.uniform())
        throw Error("qcmax_to_pcmax expects Q||Cmax");
    for (const auto& j : inst.jobs)
        if (j.r) throw Error("qcmax_to_pcmax: release dates unsupported");
    PassMeta meta = meta_for("QCmax -> PCmax", 8, 4, inst);
    if (inst.lambda.negative && !inst.lambda.magnitude.is_zero())
        return ReductionOutput::decide(false, "negative makespan threshold", meta);
    const BigNat& M = inst.lambda.magnitude;

    BigNat total = inst.total_processing();
    std::vector<BigNat> floors;
    BigNat max_floor(0);
    for (int i = 0; i < inst.machines.k; i++) {
        Rational sp = inst.machines.speed(i);
        BigNat fl = (sp.num() * M).div(sp.den());
        if (!inst.jobs.empty() && fl >= total)
            return ReductionOutput::decide(true, "one machine fits every job", meta);
        floors.push_back(fl);
        if (fl > max_floor) max_floor = fl;
    }
    if (inst.jobs.empty()) return ReductionOutput::decide(true, "no jobs", meta);
    BigNat Mp = BigNat(3) * max_floor;
    if (Mp.is_zero()) return ReductionOutput::decide(false, "no machine can run any job", meta);

    SchedulingInstance out;
    out.machines.k = inst.machines.k;
    out.objective = Objective::Cmax;
    out.lambda = SignedBig::of(Mp);
    out.jobs = inst.jobs;
    for (int i = 0; i < inst.machines.k; i++)
        out.jobs.push_back(Job{Mp - floors[std::size_t(i)], {}, {}, {}});
    return finish(out, meta);
}

ReductionOutput bounded_to_weak_grouped_q1(const PartitionInstance& inst) {
    if (!inst.is_bounded() || inst.has_targets())
        throw Error("bounded_to_weak_grouped_q1 expects a bounded partition instance");
    PassMeta meta = meta_for("BoundedPart = pb2(q=1)", 1, 4, inst);
    std::uint64_t n = inst.n_items();
    if (n % std::uint64_t(inst.k) != 0) throw IndivisibleGroup("item count not divisible by k");
    GroupedInstance out;
    out.k = inst.k;
    out.s = n / std::uint64_t(inst.k);
    out.W = *inst.bounded_W;
    out.weak_flag = true;
    out.set_flag = inst.set_flag;
    out.groups.push_back(inst.items);
    return finish(out, meta);
}

ReductionOutput weak_targets_to_weak_multiset(const GroupedInstance& inst) {
    if (!inst.targets) throw Error("weak_targets_to_weak_multiset expects targets");
    PassMeta meta = meta_for("pb2TargetsMulti -> pb2Multi", 2, 21, inst);
    std::uint64_t n = inst.n_items();
    const BigNat& W = inst.W;
    BigNat total = inst.total_sum();
    if (n < 2 || W < pow_u64(n, 10))
        return decide_grouped(inst, meta, "small instance solved directly");
    if (!total.divisible_by(BigNat(std::uint64_t(inst.k))))
        return decide_grouped(inst, meta, "average load not integral; solved directly");
    BigNat mu = total.div(BigNat(std::uint64_t(inst.k)));

    // all of t_1..t_k and mu must lie in [sqW(1-1/n^10), sqW]
    BigNat sqW = BigNat(inst.s) * BigNat(inst.q()) * W;
    BigNat tsum(0);
    for (const auto& t : *inst.targets) tsum += t;
    BigNat kmu = BigNat(std::uint64_t(inst.k)) * mu;
    if (tsum > kmu) return ReductionOutput::decide(false, "targets exceed the total", meta);
    std::vector<BigNat> all_t = *inst.targets;
    all_t.push_back(kmu - tsum);  // t_k
    all_t.push_back(mu);
    BigNat n10 = pow_u64(n, 10);
    for (const auto& t : all_t)
        if (t > sqW || t * n10 < sqW * (n10 - BigNat(1)))
            return ReductionOutput::decide(false, "target outside the feasible range", meta);

    BigNat n3 = pow_u64(n, 3);
    BigNat base = W * pow_u64(n, 20);
    GroupedInstance out;
    out.k = inst.k;
    out.s = inst.s;
    out.weak_flag = true;
    out.set_flag = false;
    out.W = base;
    for (const auto& g : inst.groups) {
        Multiset g2;
        for (const auto& [e, mult] : g.entries) g2.add(base - (W + BigNat(1) - e) * n3, mult);
        out.groups.push_back(std::move(g2));
    }
    Multiset extra;
    BigNat nW = BigNat(n) * W;
    for (int l = 0; l < inst.k; l++) {
        const BigNat& t_l = all_t[std::size_t(l)];
        // f_l = W n^20 + (mu - t_l - nW) n^3 + 1; mu <= t_l + nW always here
        BigNat f = base + BigNat(1) - (t_l + nW - mu) * n3;
        extra.add(f);
    }
    BigNat d = base + BigNat(n) - n3;
    extra.add(d, std::uint64_t(inst.k) * (inst.s - 1));
    out.groups.push_back(std::move(extra));
    return finish(out, meta);
}

ReductionOutput weak_multiset_to_weak_set(const GroupedInstance& inst) {
    if (inst.targets) throw Error("weak_multiset_to_weak_set expects no targets");
    PassMeta meta = meta_for("pb2Multi -> pb2", 2, 21, inst);
    std::uint64_t n = inst.n_items();
    const BigNat& W = inst.W;
    if (n < 2 || W < pow_u64(n, 10))
        return decide_grouped(inst, meta, "small instance solved directly");

    BigNat n20 = pow_u64(n, 20);
    BigNat n7 = pow_u64(n, 7);
    BigNat n5 = pow_u64(n, 5);
    BigNat base = W * n20;
    GroupedInstance out;
    out.k = inst.k;
    out.s = inst.s;
    out.weak_flag = true;
    out.set_flag = true;
    out.W = base;
    std::uint64_t sk = std::uint64_t(inst.k) * inst.s;
    std::vector<Multiset> zgroups;
    for (const auto& g : inst.groups) {
        Multiset y, z;
        auto flat = g.flatten();
        for (std::uint64_t j = 1; j <= sk; j++) {
            const BigNat& x = flat[std::size_t(j - 1)];
            y.add(base + BigNat(j) - n5 - (W - x) * n7);
            z.add(base - BigNat(j));
        }
        out.groups.push_back(std::move(y));
        zgroups.push_back(std::move(z));
    }
    for (auto& z : zgroups) out.groups.push_back(std::move(z));
    return finish(out, meta);
}

}  // namespace forge
