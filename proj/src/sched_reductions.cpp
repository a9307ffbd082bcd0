#include "forge/sched_reductions.hpp"

#include <algorithm>
#include <numeric>

#include "forge/error.hpp"
#include "forge/solvers.hpp"

namespace forge {

namespace {

PassMeta sched_meta(const std::string& tag, std::uint64_t c1, std::uint64_t c2,
                    const GroupedInstance& in) {
    PassMeta m;
    m.lemma_tag = tag;
    m.c1 = c1;
    m.c2 = c2;
    m.n_in = in.n_items();
    m.T_in = in.W;
    return m;
}

PassMeta sched_meta(const std::string& tag, std::uint64_t c1, std::uint64_t c2,
                    const SchedulingInstance& in) {
    PassMeta m;
    m.lemma_tag = tag;
    m.c1 = c1;
    m.c2 = c2;
    m.n_in = in.jobs.size();
    m.T_in = in.total_processing();
    return m;
}

ReductionOutput finish_sched(SchedulingInstance out, PassMeta meta) {
    out.validate();
    meta.n_out = out.jobs.size();
    meta.T_out = out.total_processing();
    return ReductionOutput::of(ProblemInstance(std::move(out)), std::move(meta));
}

// due date min(mu, i*s*W) for an item of the i-th group (1-based)
BigNat grouped_due(const GroupedInstance& inst, const BigNat& mu, std::uint64_t group_1based) {
    BigNat cap = BigNat(group_1based) * BigNat(inst.s) * inst.W;
    return cap < mu ? cap : mu;
}

bool too_small_for_formulas(const GroupedInstance& inst) {
    std::uint64_t n = inst.n_items();
    return n < 2 || inst.W < BigNat(n).pow(10);
}

}  // namespace

ReductionOutput grouped_to_sumUj0(const GroupedInstance& inst) {
    if (inst.weak_flag || inst.targets) throw Error("grouped_to_sumUj0 expects a plain grouped instance");
    PassMeta meta = sched_meta("pb2Yes -> PSumUj=0", 1, 2, inst);
    if (too_small_for_formulas(inst)) {
        SolveReport r = check_grouped_yes(inst);
        return ReductionOutput::decide(r.yes, "small instance solved directly", meta);
    }
    Rational mu = inst.mu();
    if (!mu.is_integer())
        return ReductionOutput::decide(false, "average load not integral", meta);
    BigNat mu_i = mu.floor();

    SchedulingInstance out;
    out.machines.k = inst.k;
    out.objective = Objective::SumUj;
    out.lambda = SignedBig::of(BigNat(0));
    for (std::size_t i = 0; i < inst.groups.size(); i++) {
        BigNat due = grouped_due(inst, mu_i, i + 1);
        for (const auto& p : inst.groups[i].flatten()) out.jobs.push_back(Job{p, {}, due, {}});
    }
    return finish_sched(std::move(out), std::move(meta));
}

ReductionOutput reverse_time(const SchedulingInstance& inst) {
    if (inst.machines.uniform()) throw Error("reverse_time expects identical machines");
    PassMeta meta = sched_meta("time reversal", 1, 1, inst);

    if (inst.objective == Objective::Cmax) {
        if (inst.lambda.negative && !inst.lambda.magnitude.is_zero())
            return ReductionOutput::decide(false, "negative makespan threshold", meta);
        const BigNat& M = inst.lambda.magnitude;
        SchedulingInstance out;
        out.machines.k = inst.machines.k;
        out.objective = Objective::SumUj;
        out.lambda = SignedBig::of(BigNat(0));
        for (const auto& j : inst.jobs) {
            BigNat r = j.r.value_or(BigNat(0));
            if (r > M) return ReductionOutput::decide(false, "release date beyond the threshold", meta);
            out.jobs.push_back(Job{j.p, {}, M - r, {}});
        }
        return finish_sched(std::move(out), std::move(meta));
    }
    if (inst.objective == Objective::SumUj) {
        if (!inst.lambda.magnitude.is_zero())
            throw Error("reverse_time expects the sum U_j = 0 special case");
        BigNat M(0);
        for (const auto& j : inst.jobs)
            if (*j.d > M) M = *j.d;
        SchedulingInstance out;
        out.machines.k = inst.machines.k;
        out.objective = Objective::Cmax;
        out.lambda = SignedBig::of(M);
        for (const auto& j : inst.jobs) out.jobs.push_back(Job{j.p, M - *j.d, {}, {}});
        return finish_sched(std::move(out), std::move(meta));
    }
    throw Error("reverse_time handles Cmax and sum U_j = 0 only");
}

ReductionOutput normalize_release_dates(const SchedulingInstance& inst) {
    if (inst.objective != Objective::Cmax || inst.machines.uniform())
        throw Error("normalize_release_dates expects P|r_j|Cmax");
    PassMeta meta = sched_meta("release-date normalization", 1, 1, inst);
    if (inst.lambda.negative && !inst.lambda.magnitude.is_zero())
        return ReductionOutput::decide(false, "negative makespan threshold", meta);
    if (inst.jobs.empty()) return ReductionOutput::decide(true, "no jobs", meta);

    std::vector<std::size_t> order(inst.jobs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return inst.jobs[a].r.value_or(BigNat(0)) < inst.jobs[b].r.value_or(BigNat(0));
    });

    std::vector<BigNat> r;
    std::vector<BigNat> p;
    for (std::size_t j : order) {
        r.push_back(inst.jobs[j].r.value_or(BigNat(0)));
        p.push_back(inst.jobs[j].p);
    }
    BigNat removed = r.front();
    for (auto& rj : r) rj -= removed;
    BigNat prefix(0);
    for (std::size_t j = 0; j < r.size(); j++) {
        if (r[j] > prefix) {
            BigNat gap = r[j] - prefix;
            for (std::size_t j2 = j; j2 < r.size(); j2++) r[j2] -= gap;
            removed += gap;
        }
        prefix += p[j];
    }
    if (inst.lambda.magnitude < removed)
        return ReductionOutput::decide(false, "threshold below the forced idle time", meta);

    SchedulingInstance out;
    out.machines.k = inst.machines.k;
    out.objective = Objective::Cmax;
    out.lambda = SignedBig::of(inst.lambda.magnitude - removed);
    for (std::size_t j = 0; j < r.size(); j++) out.jobs.push_back(Job{p[j], r[j], {}, {}});
    return finish_sched(std::move(out), std::move(meta));
}

ReductionOutput grouped_to_wjcj(const GroupedInstance& inst) {
    if (inst.weak_flag || inst.targets) throw Error("grouped_to_wjcj expects a plain grouped instance");
    PassMeta meta = sched_meta("pb2Yes -> PSumWjCj", 1, 2, inst);
    if (too_small_for_formulas(inst)) {
        SolveReport r = check_grouped_yes(inst);
        return ReductionOutput::decide(r.yes, "small instance solved directly", meta);
    }
    Rational mu = inst.mu();
    if (!mu.is_integer())
        return ReductionOutput::decide(false, "average load not integral", meta);
    BigNat mu_i = mu.floor();
    std::uint64_t n = inst.n_items();
    std::uint64_t q = inst.q();
    std::uint64_t s = inst.s;
    BigNat wt = BigNat(2) * inst.W * BigNat(n).pow(10);
    BigNat half_wt = inst.W * BigNat(n).pow(10);

    SchedulingInstance out;
    out.machines.k = inst.k;
    out.objective = Objective::SumWjCj;
    BigNat sum_p_sq(0);
    for (std::size_t i = 0; i < q; i++) {
        for (const auto& p : inst.groups[i].flatten()) {
            BigNat w = p * wt + BigNat(q - (i + 1));
            out.jobs.push_back(Job{p, {}, {}, w});
            sum_p_sq += p * p;
        }
    }
    // Lambda = (wt/2) k mu^2 + (wt/2) sum p_j^2 + W k sum_i (q-i) sum_r ((i-1)s + r)
    BigNat order_term(0);
    for (std::uint64_t i = 1; i <= q; i++) {
        BigNat inner(0);
        for (std::uint64_t rr = 1; rr <= s; rr++) inner += BigNat((i - 1) * s + rr);
        order_term += BigNat(q - i) * inner;
    }
    BigNat lambda = half_wt * BigNat(std::uint64_t(inst.k)) * mu_i * mu_i + half_wt * sum_p_sq +
                    inst.W * BigNat(std::uint64_t(inst.k)) * order_term;
    out.lambda = SignedBig::of(lambda);
    return finish_sched(std::move(out), std::move(meta));
}

ReductionOutput weak_grouped_to_pjUj(const GroupedInstance& inst) {
    if (inst.targets) throw Error("weak_grouped_to_pjUj expects no targets");
    if (inst.k < 2) throw Error("weak_grouped_to_pjUj needs k >= 2");
    PassMeta meta = sched_meta("pb2 -> P(k-1)SumPjUj", 1, 2, inst);
    if (too_small_for_formulas(inst))
        return ReductionOutput::decide(solve_weak_grouped(inst) == WeakVerdict::Yes,
                                       "small instance solved directly", meta);
    Rational mu = inst.mu();
    if (!mu.is_integer())
        return ReductionOutput::decide(false, "average load not integral", meta);
    BigNat mu_i = mu.floor();

    SchedulingInstance out;
    out.machines.k = inst.k - 1;
    out.objective = Objective::SumPjUj;
    out.lambda = SignedBig::of(mu_i);
    for (std::size_t i = 0; i < inst.groups.size(); i++) {
        BigNat due = grouped_due(inst, mu_i, i + 1);
        for (const auto& p : inst.groups[i].flatten()) out.jobs.push_back(Job{p, {}, due, {}});
    }
    return finish_sched(std::move(out), std::move(meta));
}

ReductionOutput lmax_tmax_shift(const SchedulingInstance& inst) {
    if (inst.objective != Objective::Lmax && inst.objective != Objective::Tmax)
        throw Error("lmax_tmax_shift expects Lmax or Tmax");
    if (inst.machines.uniform()) throw Error("lmax_tmax_shift expects identical machines");
    PassMeta meta = sched_meta("Lmax/Tmax shift", 1, 1, inst);
    if (inst.jobs.empty()) return ReductionOutput::decide(true, "no jobs", meta);
    if (inst.objective == Objective::Tmax && inst.lambda.negative && !inst.lambda.magnitude.is_zero())
        return ReductionOutput::decide(false, "negative tardiness threshold", meta);

    BigNat min_d = *inst.jobs.front().d;
    for (const auto& j : inst.jobs)
        if (*j.d < min_d) min_d = *j.d;
    if (inst.lambda.negative && inst.lambda.magnitude > min_d)
        return ReductionOutput::decide(false, "a due date would become negative", meta);

    SchedulingInstance out;
    out.machines.k = inst.machines.k;
    out.objective = Objective::SumUj;
    out.lambda = SignedBig::of(BigNat(0));
    for (const auto& j : inst.jobs) {
        BigNat d2 = inst.lambda.negative ? *j.d - inst.lambda.magnitude : *j.d + inst.lambda.magnitude;
        out.jobs.push_back(Job{j.p, {}, d2, {}});
    }
    return finish_sched(std::move(out), std::move(meta));
}

ScheduleWitness lift_grouped_schedule(const GroupedInstance& inst, const PartitionWitness& w,
                                      int machines) {
    if (w.bin_of.size() != inst.n_items()) throw ShapeMismatch("witness size != item count");
    ScheduleWitness out;
    out.placements.resize(inst.n_items());
    std::vector<BigNat> cursor(std::size_t(machines), BigNat(0));
    // group by group; within a group ascending processing time (flatten order)
    std::size_t pos = 0;
    std::vector<std::size_t> unpacked;
    for (const auto& g : inst.groups) {
        std::size_t start = pos;
        auto flat = g.flatten();
        for (std::size_t j = 0; j < flat.size(); j++) {
            int b = w.bin_of[start + j];
            if (b >= 1 && b <= machines) {
                out.placements[start + j] = {b, cursor[std::size_t(b - 1)]};
                cursor[std::size_t(b - 1)] += flat[j];
            } else {
                unpacked.push_back(start + j);
            }
        }
        pos += flat.size();
    }
    // tardy / dumpster items go last on machine 1
    std::size_t gpos = 0;
    std::vector<BigNat> values;
    for (const auto& g : inst.groups)
        for (const auto& v : g.flatten()) values.push_back(v), gpos++;
    for (std::size_t idx : unpacked) {
        out.placements[idx] = {1, cursor[0]};
        cursor[0] += values[idx];
    }
    return out;
}

}  // namespace forge
