#include "forge/harness.hpp"

#include <algorithm>

#include "forge/dimacs.hpp"
#include "forge/equivalences.hpp"
#include "forge/error.hpp"
#include "forge/json_io.hpp"
#include "forge/reduce_eth.hpp"
#include "forge/reduce_seth.hpp"
#include "forge/sched_reductions.hpp"
#include "forge/solvers.hpp"
#include "forge/vss.hpp"

namespace forge {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) return 0;
    return engine_() % n;
}

std::uint64_t Rng::range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

// ---------------------------------------------------------------------------
// Corpus generators

namespace {

Multiset random_multiset(Rng& rng, std::uint64_t n, std::uint64_t max_value) {
    std::vector<BigNat> vals;
    for (std::uint64_t i = 0; i < n; i++) vals.push_back(BigNat(rng.range(1, max_value)));
    return Multiset::from_values(std::move(vals));
}

// bounded-range items: offsets in [0, floor(W/n^10)] below W
Multiset random_bounded_multiset(Rng& rng, std::uint64_t n, const BigNat& W,
                                 std::uint64_t offset_cap) {
    std::vector<BigNat> vals;
    for (std::uint64_t i = 0; i < n; i++) vals.push_back(W - BigNat(rng.below(offset_cap + 1)));
    return Multiset::from_values(std::move(vals));
}

PartitionInstance gen_partition(Rng& rng, bool planted_half) {
    PartitionInstance p;
    p.k = int(rng.range(2, 3));
    std::uint64_t n = rng.range(2, 8);
    if (planted_half && rng.coin() && n >= std::uint64_t(p.k)) {
        // k identical bins: guaranteed yes
        std::uint64_t per = std::max<std::uint64_t>(1, n / std::uint64_t(p.k));
        std::vector<BigNat> bin;
        for (std::uint64_t i = 0; i < per; i++) bin.push_back(BigNat(rng.range(1, 50)));
        std::vector<BigNat> all;
        for (int b = 0; b < p.k; b++) all.insert(all.end(), bin.begin(), bin.end());
        p.items = Multiset::from_values(std::move(all));
    } else {
        p.items = random_multiset(rng, n, 50);
    }
    p.set_flag = false;
    return p;
}

PartitionInstance gen_binpacking(Rng& rng) {
    PartitionInstance p;
    p.k = int(rng.range(2, 3));
    p.items = random_multiset(rng, rng.range(2, 8), 50);
    BigNat total = p.items.sum();
    BigNat base = total.div(BigNat(std::uint64_t(p.k)));
    p.capacity = base + BigNat(rng.below(12));
    p.set_flag = false;
    return p;
}

PartitionInstance gen_targets_multiset(Rng& rng) {
    PartitionInstance p;
    p.k = int(rng.range(2, 3));
    std::uint64_t n = rng.range(std::uint64_t(p.k), 8);
    p.items = random_multiset(rng, n, 50);
    p.set_flag = false;
    std::vector<BigNat> targets(std::size_t(p.k), BigNat(0));
    if (rng.coin()) {
        // planted: targets are the loads of a random assignment
        auto flat = p.items.flatten();
        for (const auto& v : flat) targets[std::size_t(rng.below(std::uint64_t(p.k)))] += v;
    } else {
        // random split of the total (usually no)
        BigNat rest = p.items.sum();
        for (int b = 0; b + 1 < p.k; b++) {
            BigNat take(rng.below(rest.fits_u64() ? rest.to_u64() + 1 : 100));
            if (take > rest) take = rest;
            targets[std::size_t(b)] = take;
            rest -= take;
        }
        targets[std::size_t(p.k - 1)] = rest;
    }
    p.targets = targets;
    return p;
}

PartitionInstance gen_bounded(Rng& rng, bool force_divisible, bool as_set) {
    PartitionInstance p;
    p.k = int(rng.range(2, 3));
    std::uint64_t n = rng.range(2, 8);
    if (force_divisible) n = std::uint64_t(p.k) * rng.range(1, 8 / std::uint64_t(p.k));
    std::uint64_t base = rng.range(2, 6);
    BigNat W = BigNat(n).pow(10) * BigNat(base);
    if (rng.coin() && n % std::uint64_t(p.k) == 0) {
        // plant equal bins
        std::uint64_t per = n / std::uint64_t(p.k);
        std::vector<BigNat> bin;
        for (std::uint64_t i = 0; i < per; i++) bin.push_back(W - BigNat(rng.below(base + 1)));
        std::vector<BigNat> all;
        for (int b = 0; b < p.k; b++) all.insert(all.end(), bin.begin(), bin.end());
        p.items = Multiset::from_values(std::move(all));
    } else {
        p.items = random_bounded_multiset(rng, n, W, base);
    }
    if (as_set) {
        // distinct offsets below W; needs enough head room
        std::vector<BigNat> vals;
        std::vector<char> used(base + 1, 0);
        std::uint64_t count = std::min<std::uint64_t>(n, base + 1);
        while (vals.size() < count) {
            std::uint64_t off = rng.below(base + 1);
            if (used[off]) continue;
            used[off] = 1;
            vals.push_back(W - BigNat(off));
        }
        p.items = Multiset::from_values(std::move(vals));
        p.set_flag = true;
    }
    p.bounded_W = W;
    return p;
}

GroupedInstance gen_grouped(Rng& rng, bool weak, bool want_promise, bool with_targets) {
    GroupedInstance g;
    g.k = int(rng.range(2, 3));
    g.s = rng.range(1, 2);
    std::uint64_t q = rng.range(1, 2);
    std::uint64_t n = std::uint64_t(g.k) * g.s * q;
    std::uint64_t base = rng.range(2, 6);
    g.W = BigNat(n).pow(10) * BigNat(base);
    g.weak_flag = weak;
    g.set_flag = false;

    bool plant_yes = rng.coin();
    for (std::uint64_t i = 0; i < q; i++) {
        if (plant_yes) {
            std::vector<BigNat> bin;
            for (std::uint64_t r = 0; r < g.s; r++) bin.push_back(g.W - BigNat(rng.below(base + 1)));
            std::vector<BigNat> all;
            for (int b = 0; b < g.k; b++) all.insert(all.end(), bin.begin(), bin.end());
            g.groups.push_back(Multiset::from_values(std::move(all)));
        } else {
            g.groups.push_back(random_bounded_multiset(rng, std::uint64_t(g.k) * g.s, g.W, base));
        }
    }
    if (with_targets) {
        // targets from a random per-group selection of s items per bin
        std::vector<BigNat> targets(std::size_t(g.k) - 1, BigNat(0));
        for (const auto& grp : g.groups) {
            auto flat = grp.flatten();
            std::vector<std::size_t> order(flat.size());
            for (std::size_t i = 0; i < order.size(); i++) order[i] = i;
            // deterministic shuffle
            for (std::size_t i = order.size(); i > 1; i--)
                std::swap(order[i - 1], order[rng.below(i)]);
            std::size_t pos = 0;
            for (int b = 0; b + 1 < g.k; b++)
                for (std::uint64_t r = 0; r < g.s; r++)
                    targets[std::size_t(b)] += flat[order[pos++]];
        }
        if (rng.coin()) targets[0] += BigNat(1);  // half the corpus: perturbed targets
        g.targets = targets;
    }
    (void)want_promise;
    return g;
}

SchedulingInstance gen_qcmax(Rng& rng) {
    SchedulingInstance s;
    s.machines.k = int(rng.range(2, 3));
    static const std::pair<std::uint64_t, std::uint64_t> speed_pool[] = {
        {1, 1}, {1, 2}, {2, 3}, {3, 4}};
    for (int i = 0; i < s.machines.k; i++) {
        auto [num, den] = speed_pool[rng.below(4)];
        s.machines.speeds.push_back(Rational(BigNat(num), BigNat(den)));
    }
    s.objective = Objective::Cmax;
    std::uint64_t n = rng.range(1, 5);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < n; i++) {
        std::uint64_t p = rng.range(1, 8);
        total += p;
        s.jobs.push_back(Job{BigNat(p), {}, {}, {}});
    }
    s.lambda = SignedBig::of(BigNat(rng.below(total + 4)));
    return s;
}

SchedulingInstance gen_cmax_release(Rng& rng) {
    SchedulingInstance s;
    s.machines.k = int(rng.range(2, 3));
    s.objective = Objective::Cmax;
    std::uint64_t n = rng.range(1, 6);
    std::uint64_t total = 0;
    std::uint64_t max_rp = 0;
    for (std::uint64_t i = 0; i < n; i++) {
        std::uint64_t p = rng.range(1, 8);
        std::uint64_t r = rng.below(21);
        total += p;
        max_rp = std::max(max_rp, r + p);
        s.jobs.push_back(Job{BigNat(p), BigNat(r), {}, {}});
    }
    s.lambda = SignedBig::of(BigNat(rng.range(max_rp > 3 ? max_rp - 3 : 0, max_rp + total)));
    return s;
}

SchedulingInstance gen_sumuj(Rng& rng, bool lambda_zero) {
    SchedulingInstance s;
    s.machines.k = int(rng.range(2, 3));
    s.objective = Objective::SumUj;
    std::uint64_t n = rng.range(1, 8);
    std::uint64_t budget_T = 40;
    std::uint64_t used = 0;
    for (std::uint64_t i = 0; i < n && used < budget_T; i++) {
        std::uint64_t p = rng.range(1, std::min<std::uint64_t>(6, budget_T - used));
        used += p;
        s.jobs.push_back(Job{BigNat(p), {}, BigNat(rng.range(1, 40)), {}});
    }
    s.lambda = SignedBig::of(BigNat(lambda_zero ? 0 : rng.below(s.jobs.size() + 1)));
    return s;
}

SchedulingInstance gen_lmax_tmax(Rng& rng) {
    SchedulingInstance s;
    s.machines.k = int(rng.range(2, 3));
    s.objective = rng.coin() ? Objective::Lmax : Objective::Tmax;
    std::uint64_t n = rng.range(1, 6);
    for (std::uint64_t i = 0; i < n; i++)
        s.jobs.push_back(Job{BigNat(rng.range(1, 8)), {}, BigNat(rng.range(1, 25)), {}});
    std::uint64_t mag = rng.below(11);
    bool neg = s.objective == Objective::Lmax && rng.coin();
    s.lambda = SignedBig{neg, BigNat(neg ? rng.below(6) : mag)};
    return s;
}

VssInstance gen_vss(Rng& rng) {
    VssInstance v;
    v.k = int(rng.range(1, 3));
    std::uint64_t n = rng.range(1, 8);
    for (int c = 0; c < v.k; c++) v.target.push_back(BigNat(rng.below(12)));
    for (std::uint64_t i = 0; i < n; i++) {
        std::vector<BigNat> vec;
        for (int c = 0; c < v.k; c++) vec.push_back(BigNat(rng.below(8)));
        v.vectors.push_back(vec);
    }
    if (rng.coin() && !v.vectors.empty()) {
        // plant: target = sum of a random subset
        std::vector<BigNat> t(std::size_t(v.k), BigNat(0));
        for (const auto& vec : v.vectors)
            if (rng.coin())
                for (int c = 0; c < v.k; c++) t[std::size_t(c)] += vec[std::size_t(c)];
        v.target = t;
    }
    return v;
}

SubsetSumInstance gen_subset_sum(Rng& rng) {
    SubsetSumInstance s;
    std::uint64_t n = rng.range(1, 10);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < n; i++) {
        std::uint64_t x = rng.range(1, 40);
        total += x;
        s.items.push_back(BigNat(x));
    }
    if (rng.coin()) {
        BigNat t(0);
        for (const auto& x : s.items)
            if (rng.coin()) t += x;
        s.target = t;
    } else {
        s.target = BigNat(std::min<std::uint64_t>(rng.below(total + 2), 200));
    }
    return s;
}

Clause random_clause(Rng& rng, int nvars, int max_width) {
    int width = int(rng.range(1, std::uint64_t(max_width)));
    std::vector<int> vars;
    while (int(vars.size()) < width) {
        int v = int(rng.range(1, std::uint64_t(nvars)));
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    Clause c;
    for (int v : vars) c.literals.push_back(rng.coin() ? v : -v);
    return c;
}

CnfFormula gen_cnf(Rng& rng, int max_vars, int max_clauses, int max_width) {
    CnfFormula f;
    f.num_vars = int(rng.range(1, std::uint64_t(max_vars)));
    int m = int(rng.range(1, std::uint64_t(max_clauses)));
    for (int i = 0; i < m; i++) f.clauses.push_back(random_clause(rng, f.num_vars, max_width));
    return f;
}

}  // namespace

ProblemInstance generate_instance(const std::string& generator, Rng& rng) {
    if (generator == "partition_small") return gen_partition(rng, true);
    if (generator == "binpacking_small") return gen_binpacking(rng);
    if (generator == "targets_multiset_small") return gen_targets_multiset(rng);
    if (generator == "bounded_multiset_small") return gen_bounded(rng, false, false);
    if (generator == "bounded_divisible_small") return gen_bounded(rng, true, false);
    if (generator == "bounded_set_small") return gen_bounded(rng, true, true);
    if (generator == "grouped_yes_toy") return gen_grouped(rng, false, false, false);
    if (generator == "weak_grouped_toy") return gen_grouped(rng, true, true, false);
    if (generator == "weak_grouped_targets_toy") return gen_grouped(rng, true, true, true);
    if (generator == "qcmax_small") return gen_qcmax(rng);
    if (generator == "cmax_release_small") return gen_cmax_release(rng);
    if (generator == "sumuj_small") return gen_sumuj(rng, false);
    if (generator == "sumuj0_small") return gen_sumuj(rng, true);
    if (generator == "lmax_tmax_small") return gen_lmax_tmax(rng);
    if (generator == "vss_small") return gen_vss(rng);
    if (generator == "subset_sum_small") return gen_subset_sum(rng);
    throw Error("unknown generator: " + generator);
}

CnfFormula generate_cnf(const std::string& generator, Rng& rng) {
    if (generator == "cnf3_small") return gen_cnf(rng, 4, 3, 3);
    if (generator == "cnfK_small") return gen_cnf(rng, 3, 2, 3);
    throw Error("unknown cnf generator: " + generator);
}

std::vector<std::string> known_generators() {
    return {"partition_small",       "binpacking_small",    "targets_multiset_small",
            "bounded_multiset_small", "bounded_divisible_small", "bounded_set_small",
            "grouped_yes_toy",       "weak_grouped_toy",    "weak_grouped_targets_toy",
            "qcmax_small",           "cmax_release_small",  "sumuj_small",
            "sumuj0_small",          "lmax_tmax_small",     "vss_small",
            "subset_sum_small",      "cnf3_small",          "cnfK_small"};
}

// ---------------------------------------------------------------------------
// Registry

const std::map<std::string, PassInfo>& pass_registry() {
    static const std::map<std::string, PassInfo> registry = [] {
        std::map<std::string, PassInfo> r;
        auto add = [&](const std::string& id, PassKind kind, const std::string& gen,
                       std::function<ReductionOutput(const ProblemInstance&)> fn) {
            r[id] = PassInfo{id, kind, gen, std::move(fn)};
        };
        auto part = [](const ProblemInstance& i) -> const PartitionInstance& {
            const auto* p = std::get_if<PartitionInstance>(&i);
            if (!p) throw ShapeMismatch("pass expects a partition instance");
            return *p;
        };
        auto grouped = [](const ProblemInstance& i) -> const GroupedInstance& {
            const auto* g = std::get_if<GroupedInstance>(&i);
            if (!g) throw ShapeMismatch("pass expects a grouped instance");
            return *g;
        };
        auto sched = [](const ProblemInstance& i) -> const SchedulingInstance& {
            const auto* s = std::get_if<SchedulingInstance>(&i);
            if (!s) throw ShapeMismatch("pass expects a scheduling instance");
            return *s;
        };
        add("partition_to_binpacking", PassKind::Instance, "partition_small",
            [=](const ProblemInstance& i) { return partition_to_binpacking(part(i)); });
        add("binpacking_to_partition", PassKind::Instance, "binpacking_small",
            [=](const ProblemInstance& i) { return binpacking_to_partition(part(i)); });
        add("targets_to_plain_multiset", PassKind::Instance, "targets_multiset_small",
            [=](const ProblemInstance& i) { return targets_to_plain_multiset(part(i)); });
        add("multiset_to_bounded", PassKind::Instance, "partition_small",
            [=](const ProblemInstance& i) { return multiset_to_bounded(part(i)); });
        add("bounded_multiset_to_set", PassKind::Instance, "bounded_multiset_small",
            [=](const ProblemInstance& i) { return bounded_multiset_to_set(part(i)); });
        add("qcmax_to_pcmax", PassKind::Instance, "qcmax_small",
            [=](const ProblemInstance& i) { return qcmax_to_pcmax(sched(i)); });
        add("bounded_to_weak_grouped_q1", PassKind::Instance, "bounded_divisible_small",
            [=](const ProblemInstance& i) { return bounded_to_weak_grouped_q1(part(i)); });
        add("weak_targets_to_weak_multiset", PassKind::Instance, "weak_grouped_targets_toy",
            [=](const ProblemInstance& i) { return weak_targets_to_weak_multiset(grouped(i)); });
        add("weak_multiset_to_weak_set", PassKind::Instance, "weak_grouped_toy",
            [=](const ProblemInstance& i) { return weak_multiset_to_weak_set(grouped(i)); });
        add("sumuj0", PassKind::Instance, "grouped_yes_toy",
            [=](const ProblemInstance& i) { return grouped_to_sumUj0(grouped(i)); });
        add("wjcj", PassKind::Instance, "grouped_yes_toy",
            [=](const ProblemInstance& i) { return grouped_to_wjcj(grouped(i)); });
        add("pjuj", PassKind::Instance, "weak_grouped_toy",
            [=](const ProblemInstance& i) { return weak_grouped_to_pjUj(grouped(i)); });
        add("reverse-time", PassKind::Instance, "cmax_release_small",
            [=](const ProblemInstance& i) { return reverse_time(sched(i)); });
        add("normalize-r", PassKind::Instance, "cmax_release_small",
            [=](const ProblemInstance& i) { return normalize_release_dates(sched(i)); });
        add("lmax-shift", PassKind::Instance, "lmax_tmax_small",
            [=](const ProblemInstance& i) { return lmax_tmax_shift(sched(i)); });
        add("vss_to_subset_sum", PassKind::Instance, "vss_small", [=](const ProblemInstance& i) {
            const auto* v = std::get_if<VssInstance>(&i);
            if (!v) throw ShapeMismatch("pass expects a vss instance");
            auto out = vss_to_subset_sum(*v);
            PassMeta meta = out.meta;
            return ReductionOutput::of(ProblemInstance(out.instance), meta);
        });
        add("subset_sum_to_vss", PassKind::SubsetSumFamily, "subset_sum_small", nullptr);
        add("build_eth_instance", PassKind::EthFormula, "cnf3_small", nullptr);
        add("build_seth_instance", PassKind::SethFormula, "cnfK_small", nullptr);
        return r;
    }();
    return registry;
}

std::vector<std::string> expected_pass_ids() {
    return {"partition_to_binpacking",
            "binpacking_to_partition",
            "targets_to_plain_multiset",
            "multiset_to_bounded",
            "bounded_multiset_to_set",
            "qcmax_to_pcmax",
            "bounded_to_weak_grouped_q1",
            "weak_targets_to_weak_multiset",
            "weak_multiset_to_weak_set",
            "sumuj0",
            "wjcj",
            "pjuj",
            "reverse-time",
            "normalize-r",
            "lmax-shift",
            "vss_to_subset_sum",
            "subset_sum_to_vss",
            "build_eth_instance",
            "build_seth_instance"};
}

// ---------------------------------------------------------------------------
// Oracles and round trips

OracleVerdict oracle_verdict(const ProblemInstance& inst) {
    if (const auto* g = std::get_if<GroupedInstance>(&inst)) {
        if (g->weak_flag) {
            switch (solve_weak_grouped(*g)) {
                case WeakVerdict::Yes: return OracleVerdict::Yes;
                case WeakVerdict::No: return OracleVerdict::No;
                case WeakVerdict::PromiseViolated: return OracleVerdict::PromiseViolated;
            }
        }
        return check_grouped_yes(*g).yes ? OracleVerdict::Yes : OracleVerdict::No;
    }
    if (const auto* s = std::get_if<SchedulingInstance>(&inst))
        return sched_bruteforce(*s).yes ? OracleVerdict::Yes : OracleVerdict::No;
    return solve_auto(inst).yes ? OracleVerdict::Yes : OracleVerdict::No;
}

namespace {

OracleVerdict output_verdict(const ReductionOutput& out) {
    if (out.is_decided()) return out.decided->yes ? OracleVerdict::Yes : OracleVerdict::No;
    return oracle_verdict(*out.instance);
}

bool verdicts_match(OracleVerdict in, OracleVerdict out) {
    // promise violations are skipped before this point
    return in == out;
}

std::string to_string_cnf_note(const CnfFormula& f, int k) {
    return "k=" + std::to_string(k) + "\n" + to_dimacs(f);
}

// one-item-removed variants that still satisfy the instance's invariants
std::vector<ProblemInstance> shrink_candidates(const ProblemInstance& inst) {
    std::vector<ProblemInstance> out;
    if (const auto* p = std::get_if<PartitionInstance>(&inst)) {
        auto flat = p->items.flatten();
        for (std::size_t drop = 0; drop < flat.size(); drop++) {
            PartitionInstance q = *p;
            std::vector<BigNat> rest;
            for (std::size_t i = 0; i < flat.size(); i++)
                if (i != drop) rest.push_back(flat[i]);
            q.items = Multiset::from_values(rest);
            try {
                q.validate();
                out.push_back(q);
            } catch (const Error&) {
            }
        }
    } else if (const auto* s = std::get_if<SchedulingInstance>(&inst)) {
        for (std::size_t drop = 0; drop < s->jobs.size(); drop++) {
            SchedulingInstance q = *s;
            q.jobs.erase(q.jobs.begin() + std::ptrdiff_t(drop));
            out.push_back(q);
        }
    } else if (const auto* v = std::get_if<VssInstance>(&inst)) {
        for (std::size_t drop = 0; drop < v->vectors.size(); drop++) {
            VssInstance q = *v;
            q.vectors.erase(q.vectors.begin() + std::ptrdiff_t(drop));
            out.push_back(q);
        }
    } else if (const auto* ss = std::get_if<SubsetSumInstance>(&inst)) {
        for (std::size_t drop = 0; drop < ss->items.size(); drop++) {
            SubsetSumInstance q = *ss;
            q.items.erase(q.items.begin() + std::ptrdiff_t(drop));
            out.push_back(q);
        }
    }
    return out;
}

}  // namespace

RoundtripReport roundtrip_check(const std::string& pass_id, const CorpusSpec& corpus) {
    const auto& registry = pass_registry();
    auto it = registry.find(pass_id);
    if (it == registry.end()) throw Error("unregistered pass: " + pass_id);
    const PassInfo& pass = it->second;
    std::string gen = corpus.generator.empty() ? pass.default_generator : corpus.generator;
    Rng rng(corpus.seed);
    RoundtripReport report;

    auto run_one_instance = [&](const ProblemInstance& inst) -> std::optional<bool> {
        OracleVerdict in = oracle_verdict(inst);
        if (in == OracleVerdict::PromiseViolated) return std::nullopt;
        ReductionOutput out = pass.apply(inst);
        if (out.is_decided()) report.decided++;
        OracleVerdict got = output_verdict(out);
        if (got == OracleVerdict::PromiseViolated) return std::nullopt;
        return verdicts_match(in, got);
    };

    for (std::uint64_t c = 0; c < corpus.count; c++) {
        if (pass.kind == PassKind::Instance) {
            ProblemInstance inst = generate_instance(gen, rng);
            auto match = run_one_instance(inst);
            if (!match) {
                report.skipped++;
                continue;
            }
            report.checked++;
            if (*match) {
                report.matched++;
                continue;
            }
            // shrink
            ProblemInstance cur = inst;
            for (int step = 0; step < 1000; step++) {
                bool shrunk = false;
                for (auto& cand : shrink_candidates(cur)) {
                    std::optional<bool> m;
                    try {
                        m = run_one_instance(cand);
                    } catch (const Error&) {
                        continue;
                    }
                    if (m && !*m) {
                        cur = cand;
                        shrunk = true;
                        break;
                    }
                }
                if (!shrunk) break;
            }
            if (!report.counterexample) report.counterexample = serialize_instance(cur);
        } else if (pass.kind == PassKind::SubsetSumFamily) {
            ProblemInstance inst = generate_instance(gen, rng);
            const auto& ss = std::get<SubsetSumInstance>(inst);
            bool in_yes = subset_sum_bruteforce(ss).yes;
            int k = int(rng.range(1, 3));
            auto fam = subset_sum_to_vss(ss.items, ss.target, k);
            bool any = false;
            for (const auto& m : fam.members)
                if (!any && solve_auto(ProblemInstance(m.instance)).yes) any = true;
            report.checked++;
            if (in_yes == any)
                report.matched++;
            else if (!report.counterexample)
                report.counterexample = serialize_instance(inst);
        } else if (pass.kind == PassKind::EthFormula) {
            CnfFormula f = generate_cnf(gen, rng);
            int k = rng.coin() ? 2 : 3;
            bool sat = sat_bruteforce(f).yes;
            auto [inst, art] = build_eth_instance(f, k);
            bool got = partition_targets_bruteforce(inst).yes;
            report.checked++;
            if (sat == got)
                report.matched++;
            else if (!report.counterexample)
                report.counterexample = to_string_cnf_note(f, k);
        } else {  // SethFormula
            CnfFormula f = generate_cnf(gen, rng);
            bool sat = sat_bruteforce(f).yes;
            CnfFormula padded = pad_variables(f, 2, 1);
            SethParams params = SethParams::make(padded, 2, 1, Rational(BigNat(1), BigNat(2)));
            bool any = false;
            auto stream = gamma_tuples(params);
            while (auto g = stream.next()) {
                if (check_grouped_yes(build_seth_instance(params, *g)).yes) {
                    any = true;
                    break;
                }
            }
            report.checked++;
            if (sat == any)
                report.matched++;
            else if (!report.counterexample)
                report.counterexample = to_string_cnf_note(f, 2);
        }
    }
    return report;
}

AuditReport param_audit(const std::string& pass_id, const CorpusSpec& corpus) {
    const auto& registry = pass_registry();
    auto it = registry.find(pass_id);
    if (it == registry.end()) throw Error("unregistered pass: " + pass_id);
    const PassInfo& pass = it->second;
    if (pass.kind != PassKind::Instance) throw Error("param_audit covers instance passes only");
    std::string gen = corpus.generator.empty() ? pass.default_generator : corpus.generator;
    Rng rng(corpus.seed);
    AuditReport report;
    double max_ratio = 0;

    for (std::uint64_t c = 0; c < corpus.count; c++) {
        ProblemInstance inst = generate_instance(gen, rng);
        ReductionOutput out;
        try {
            out = pass.apply(inst);
        } catch (const Error&) {
            continue;
        }
        if (out.is_decided() || !out.meta.param_preserving) continue;
        report.checked++;
        const PassMeta& m = out.meta;
        std::uint64_t n_clamped = std::max<std::uint64_t>(m.n_in, 2);
        BigNat T_clamped = m.T_in < BigNat(1) ? BigNat(1) : m.T_in;
        std::uint64_t logT = ceil_log2_at_least_one(T_clamped);
        std::uint64_t size_bound = m.c1 * (n_clamped + logT);
        bool ok_n = m.n_out <= size_bound;
        bool ok_T = m.T_out <= T_clamped * BigNat(n_clamped).pow(m.c2);
        if (!ok_n || !ok_T) {
            report.violations++;
            if (report.note.empty())
                report.note = "pass " + pass_id + ": n'=" + std::to_string(m.n_out) +
                              " bound=" + std::to_string(size_bound) + (ok_T ? "" : " (T bound broken)");
        }
        double ratio = double(m.n_out) / double(n_clamped + logT);
        max_ratio = std::max(max_ratio, ratio);
    }
    report.max_size_ratio = std::to_string(max_ratio);
    return report;
}

CardinalityReport bounded_cardinality_check(const CorpusSpec& corpus) {
    Rng rng(corpus.seed);
    CardinalityReport report;
    std::string gen = corpus.generator.empty() ? "bounded_multiset_small" : corpus.generator;
    for (std::uint64_t c = 0; c < corpus.count; c++) {
        ProblemInstance inst = generate_instance(gen, rng);
        const auto* p = std::get_if<PartitionInstance>(&inst);
        if (!p || !p->is_bounded()) {
            report.skipped++;
            continue;
        }
        SolveReport r = bounded_partition_bruteforce(*p);
        if (!r.yes) {
            report.skipped++;
            continue;
        }
        report.checked++;
        const auto& w = std::get<PartitionWitness>(*r.witness);
        std::vector<std::uint64_t> count(std::size_t(p->k), 0);
        for (int b : w.bin_of) count[std::size_t(b - 1)]++;
        std::uint64_t per = p->n_items() / std::uint64_t(p->k);
        for (auto cnt : count)
            if (cnt != per) report.violations++;
    }
    return report;
}

}  // namespace forge
