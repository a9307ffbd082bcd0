#include "forge/problems.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "forge/error.hpp"

namespace forge {

// ---------------------------------------------------------------------------
// CNF

std::vector<int> Clause::variables() const {
    std::vector<int> vars;
    vars.reserve(literals.size());
    for (int lit : literals) vars.push_back(lit < 0 ? -lit : lit);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

int CnfFormula::max_width() const {
    int w = 0;
    for (const auto& c : clauses) w = std::max(w, int(c.variables().size()));
    return w;
}

int CnfFormula::max_occurrences() const {
    std::map<int, int> occ;
    for (const auto& c : clauses)
        for (int v : c.variables()) occ[v]++;
    int d = 0;
    for (const auto& [v, n] : occ) d = std::max(d, n);
    return d;
}

void CnfFormula::validate() const {
    for (const auto& c : clauses) {
        if (c.literals.empty()) throw EmptyClause("clause with no literals");
        for (int lit : c.literals) {
            int v = lit < 0 ? -lit : lit;
            if (lit == 0 || v > num_vars)
                throw LiteralOutOfRange("literal " + std::to_string(lit) + " with N=" +
                                        std::to_string(num_vars));
        }
    }
}

bool clause_satisfied(const Clause& c, const Assignment& a) {
    for (int lit : c.literals) {
        int v = lit < 0 ? -lit : lit;
        bool val = a[std::size_t(v) - 1];
        if (lit > 0 ? val : !val) return true;
    }
    return false;
}

bool formula_satisfied(const CnfFormula& f, const Assignment& a) {
    for (const auto& c : f.clauses)
        if (!clause_satisfied(c, a)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Multiset

Multiset Multiset::from_values(std::vector<BigNat> values) {
    std::sort(values.begin(), values.end());
    Multiset m;
    for (auto& v : values) {
        if (!m.entries.empty() && m.entries.back().first == v)
            m.entries.back().second++;
        else
            m.entries.push_back({std::move(v), 1});
    }
    return m;
}

std::uint64_t Multiset::size() const {
    std::uint64_t n = 0;
    for (const auto& [v, m] : entries) n += m;
    return n;
}

BigNat Multiset::sum() const {
    BigNat s(0);
    for (const auto& [v, m] : entries) s += v * BigNat(m);
    return s;
}

BigNat Multiset::max_value() const {
    if (entries.empty()) throw Error("max of empty multiset");
    return entries.back().first;
}

bool Multiset::all_multiplicity_one() const {
    for (const auto& [v, m] : entries)
        if (m != 1) return false;
    return true;
}

std::vector<BigNat> Multiset::flatten() const {
    std::vector<BigNat> out;
    out.reserve(size());
    for (const auto& [v, m] : entries)
        for (std::uint64_t i = 0; i < m; i++) out.push_back(v);
    return out;
}

void Multiset::add(const BigNat& value, std::uint64_t mult) {
    if (mult == 0) return;
    auto it = std::lower_bound(entries.begin(), entries.end(), value,
                               [](const auto& e, const BigNat& v) { return e.first < v; });
    if (it != entries.end() && it->first == value)
        it->second += mult;
    else
        entries.insert(it, {value, mult});
}

// ---------------------------------------------------------------------------
// Instances

bool in_bounded_range(const BigNat& x, const BigNat& W, std::uint64_t n) {
    if (x > W) return false;
    BigNat npow = BigNat(n < 1 ? 1 : n).pow(10);
    return x * npow >= W * (npow - BigNat(1));
}

std::string PartitionInstance::kind() const {
    std::string base;
    if (is_bin_packing())
        base = "bin_packing";
    else if (has_targets())
        base = "partition_targets";
    else if (is_bounded())
        base = "partition_bounded";
    else
        base = "partition";
    return set_flag ? base : "multiset_" + base;
}

void PartitionInstance::validate() const {
    if (k < 2) throw InvariantViolation("partition instance needs k >= 2");
    if (set_flag && !items.all_multiplicity_one())
        throw InvariantViolation("set instance with repeated items");
    if (capacity && targets) throw InvariantViolation("both capacity and targets set");
    if (targets && targets->size() != std::size_t(k))
        throw InvariantViolation("targets size != k");
    if (bounded_W) {
        std::uint64_t n = n_items();
        for (const auto& [v, m] : items.entries)
            if (!in_bounded_range(v, *bounded_W, n))
                throw InvariantViolation("item outside bounded range [W(1-1/n^10), W]");
    }
}

Rational GroupedInstance::mu() const { return Rational(total_sum(), BigNat(std::uint64_t(k))); }

BigNat GroupedInstance::total_sum() const {
    BigNat s(0);
    for (const auto& g : groups) s += g.sum();
    return s;
}

std::string GroupedInstance::kind() const {
    std::string base = weak_flag ? "weak_grouped_partition" : "grouped_partition";
    if (targets) base += "_targets";
    return set_flag ? base : "multiset_" + base;
}

void GroupedInstance::validate() const {
    if (k < 2) throw InvariantViolation("grouped instance needs k >= 2");
    if (s < 1) throw InvariantViolation("grouped instance needs s >= 1");
    std::uint64_t ks = std::uint64_t(k) * s;
    std::uint64_t n = n_items();
    for (const auto& g : groups) {
        if (g.size() != ks) throw InvariantViolation("group size != k*s");
        if (set_flag && !g.all_multiplicity_one())
            throw InvariantViolation("set-flagged group with repeated items");
        for (const auto& [v, m] : g.entries)
            if (!in_bounded_range(v, W, n))
                throw InvariantViolation("grouped item outside [W(1-1/n^10), W]");
    }
    if (targets && targets->size() != std::size_t(k) - 1)
        throw InvariantViolation("grouped targets size != k-1");
}

std::string objective_name(Objective o) {
    switch (o) {
        case Objective::Cmax: return "cmax";
        case Objective::SumUj: return "sum_uj";
        case Objective::SumWjCj: return "sum_wj_cj";
        case Objective::SumPjUj: return "sum_pj_uj";
        case Objective::Lmax: return "lmax";
        case Objective::Tmax: return "tmax";
    }
    throw Error("bad objective");
}

Objective objective_from_name(const std::string& name) {
    if (name == "cmax") return Objective::Cmax;
    if (name == "sum_uj") return Objective::SumUj;
    if (name == "sum_wj_cj") return Objective::SumWjCj;
    if (name == "sum_pj_uj") return Objective::SumPjUj;
    if (name == "lmax") return Objective::Lmax;
    if (name == "tmax") return Objective::Tmax;
    throw Error("unknown objective: " + name);
}

BigNat SchedulingInstance::total_processing() const {
    BigNat s(0);
    for (const auto& j : jobs) s += j.p;
    return s;
}

std::string SchedulingInstance::kind() const {
    std::string env = machines.uniform() ? "Q" : "P";
    return "scheduling_" + env + "_" + objective_name(objective);
}

void SchedulingInstance::validate() const {
    if (machines.k < 1) throw InvariantViolation("scheduling needs k >= 1");
    if (machines.uniform()) {
        if (machines.speeds.size() != std::size_t(machines.k))
            throw InvariantViolation("speed count != k");
        for (const auto& sp : machines.speeds)
            if (sp <= Rational(BigNat(0)) || sp > Rational(BigNat(1)))
                throw InvariantViolation("machine speed outside (0,1]");
    }
    bool need_d = objective == Objective::SumUj || objective == Objective::SumPjUj ||
                  objective == Objective::Lmax || objective == Objective::Tmax;
    bool allow_r = objective == Objective::Cmax;
    bool need_w = objective == Objective::SumWjCj;
    for (const auto& j : jobs) {
        if (j.p < BigNat(1)) throw InvariantViolation("job with processing time 0");
        if (need_d && !j.d) throw InvariantViolation("objective needs due dates");
        if (!need_d && j.d) throw InvariantViolation("due date on objective without them");
        if (j.r && !allow_r) throw InvariantViolation("release date outside Cmax");
        if (need_w != j.w.has_value()) throw InvariantViolation("weight presence mismatch");
    }
    if (lambda.negative && objective != Objective::Lmax && !lambda.magnitude.is_zero())
        throw InvariantViolation("negative threshold outside Lmax");
}

BigNat VssInstance::parameter_T() const {
    BigNat t(0);
    for (const auto& c : target) t += c;
    return t;
}

void VssInstance::validate() const {
    if (k < 1) throw InvariantViolation("vss needs k >= 1");
    if (target.size() != std::size_t(k)) throw InvariantViolation("vss target dim != k");
    for (const auto& v : vectors)
        if (v.size() != std::size_t(k)) throw InvariantViolation("vss vector dim != k");
}

std::string kind_of(const ProblemInstance& inst) {
    return std::visit([](const auto& i) { return i.kind(); }, inst);
}

void validate(const ProblemInstance& inst) {
    std::visit(
        [](const auto& i) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(i)>, SubsetSumInstance>) i.validate();
        },
        inst);
}

BigNat parameter_of(const ProblemInstance& inst) {
    if (const auto* p = std::get_if<PartitionInstance>(&inst)) {
        if (p->capacity) return *p->capacity;
        if (p->targets) {
            BigNat m(0);
            for (const auto& t : *p->targets)
                if (t > m) m = t;
            return m;
        }
        return p->items.sum().div(BigNat(std::uint64_t(p->k)));
    }
    if (const auto* g = std::get_if<GroupedInstance>(&inst)) return g->W;
    if (const auto* s = std::get_if<SchedulingInstance>(&inst)) return s->total_processing();
    if (const auto* v = std::get_if<VssInstance>(&inst)) return v->parameter_T();
    return std::get<SubsetSumInstance>(inst).target;
}

// ---------------------------------------------------------------------------
// ReductionOutput

ReductionOutput ReductionOutput::of(ProblemInstance inst, PassMeta meta) {
    ReductionOutput out;
    out.instance = std::move(inst);
    out.meta = std::move(meta);
    return out;
}

ReductionOutput ReductionOutput::decide(bool yes, std::string reason, PassMeta meta) {
    ReductionOutput out;
    out.decided = Decided{yes, std::move(reason)};
    out.meta = std::move(meta);
    return out;
}

// ---------------------------------------------------------------------------
// check_witness

namespace {

bool check_partition_witness(const PartitionInstance& inst, const PartitionWitness& w) {
    auto items = inst.items.flatten();
    if (w.bin_of.size() != items.size()) throw ShapeMismatch("witness size != item count");
    std::vector<BigNat> load(std::size_t(inst.k), BigNat(0));
    for (std::size_t i = 0; i < items.size(); i++) {
        int b = w.bin_of[i];
        if (b < 1 || b > inst.k) throw ShapeMismatch("partition bin index out of range");
        load[std::size_t(b) - 1] += items[i];
    }
    if (inst.capacity) {
        for (const auto& l : load)
            if (l > *inst.capacity) return false;
        return true;
    }
    if (inst.targets) {
        for (int b = 0; b < inst.k; b++)
            if (load[std::size_t(b)] != (*inst.targets)[std::size_t(b)]) return false;
        return true;
    }
    for (int b = 1; b < inst.k; b++)
        if (load[std::size_t(b)] != load[0]) return false;
    return true;
}

bool check_grouped_witness(const GroupedInstance& inst, const PartitionWitness& w) {
    if (w.bin_of.size() != inst.n_items()) throw ShapeMismatch("witness size != item count");
    std::vector<BigNat> load(std::size_t(inst.k) - 1, BigNat(0));
    std::size_t pos = 0;
    for (const auto& g : inst.groups) {
        std::vector<std::uint64_t> count(std::size_t(inst.k) - 1, 0);
        for (const auto& v : g.flatten()) {
            int b = w.bin_of[pos++];
            // 0 and k both mean "left unpacked" (the k-th bin of the full
            // partition carries no separate condition).
            if (b < 0 || b > inst.k) throw ShapeMismatch("grouped bin index out of range");
            if (b >= 1 && b <= inst.k - 1) {
                count[std::size_t(b) - 1]++;
                load[std::size_t(b) - 1] += v;
            }
        }
        for (auto c : count)
            if (c != inst.s) return false;
    }
    if (inst.targets) {
        for (std::size_t b = 0; b + 1 < std::size_t(inst.k); b++)
            if (load[b] != (*inst.targets)[b]) return false;
        return true;
    }
    Rational mu = inst.mu();
    if (!mu.is_integer()) return false;
    for (const auto& l : load)
        if (Rational(l) != mu) return false;
    return true;
}

// Signed comparison helpers against the threshold.
bool le_threshold(const BigNat& value, const SignedBig& lambda) {
    if (lambda.negative && !lambda.magnitude.is_zero()) return false;
    return value <= lambda.magnitude;
}

bool check_schedule_witness(const SchedulingInstance& inst, const ScheduleWitness& w) {
    if (w.placements.size() != inst.jobs.size()) throw ShapeMismatch("witness size != job count");
    int k = inst.machines.k;
    // Per machine, completion intervals must not overlap. Starts are load
    // units: on identical machines that is wall clock; on uniform machines
    // the schedule must be compact (start = sum of earlier loads) and wall
    // clock completion is load/speed.
    std::vector<std::vector<std::size_t>> per_machine{std::size_t(k), std::vector<std::size_t>{}};
    for (std::size_t j = 0; j < inst.jobs.size(); j++) {
        int m = w.placements[j].machine;
        if (m < 1 || m > k) throw ShapeMismatch("machine index out of range");
        per_machine[std::size_t(m) - 1].push_back(j);
    }
    std::vector<Rational> completion(inst.jobs.size());
    for (int m = 0; m < k; m++) {
        auto& js = per_machine[std::size_t(m)];
        std::sort(js.begin(), js.end(), [&](std::size_t a, std::size_t b) {
            return w.placements[a].start < w.placements[b].start;
        });
        BigNat cursor(0);
        for (std::size_t j : js) {
            const BigNat& st = w.placements[j].start;
            if (st < cursor) return false;  // overlap
            if (inst.machines.uniform() && st != cursor) return false;  // require compact
            if (inst.jobs[j].r && st < *inst.jobs[j].r) return false;
            cursor = st + inst.jobs[j].p;
            if (inst.machines.uniform()) {
                Rational sp = inst.machines.speed(m);
                completion[j] = Rational(cursor * sp.den(), sp.num());
            } else {
                completion[j] = Rational(cursor);
            }
        }
    }
    switch (inst.objective) {
        case Objective::Cmax: {
            if (inst.lambda.negative && !inst.lambda.magnitude.is_zero()) return false;
            for (std::size_t j = 0; j < inst.jobs.size(); j++)
                if (completion[j] > Rational(inst.lambda.magnitude)) return false;
            return true;
        }
        case Objective::SumUj: {
            BigNat tardy(0);
            for (std::size_t j = 0; j < inst.jobs.size(); j++)
                if (completion[j] > Rational(*inst.jobs[j].d)) tardy += BigNat(1);
            return le_threshold(tardy, inst.lambda);
        }
        case Objective::SumPjUj: {
            BigNat total(0);
            for (std::size_t j = 0; j < inst.jobs.size(); j++)
                if (completion[j] > Rational(*inst.jobs[j].d)) total += inst.jobs[j].p;
            return le_threshold(total, inst.lambda);
        }
        case Objective::SumWjCj: {
            // weighted completion times are integral on identical machines
            BigNat total(0);
            for (std::size_t j = 0; j < inst.jobs.size(); j++)
                total += *inst.jobs[j].w * completion[j].floor();
            return le_threshold(total, inst.lambda);
        }
        case Objective::Lmax:
        case Objective::Tmax: {
            // max lateness <= lambda  <=>  C_j <= d_j + lambda for all j
            for (std::size_t j = 0; j < inst.jobs.size(); j++) {
                const BigNat& d = *inst.jobs[j].d;
                if (inst.lambda.negative) {
                    if (d < inst.lambda.magnitude) return false;
                    if (completion[j] > Rational(d - inst.lambda.magnitude)) return false;
                } else {
                    if (completion[j] > Rational(d + inst.lambda.magnitude)) return false;
                }
            }
            return true;
        }
    }
    throw Error("bad objective");
}

bool check_vss_witness(const VssInstance& inst, const SubsetWitness& w) {
    if (w.take.size() != inst.vectors.size()) throw ShapeMismatch("witness size != vector count");
    std::vector<BigNat> acc(std::size_t(inst.k), BigNat(0));
    for (std::size_t i = 0; i < inst.vectors.size(); i++)
        if (w.take[i])
            for (int c = 0; c < inst.k; c++) acc[std::size_t(c)] += inst.vectors[i][std::size_t(c)];
    for (int c = 0; c < inst.k; c++)
        if (acc[std::size_t(c)] != inst.target[std::size_t(c)]) return false;
    return true;
}

bool check_subset_sum_witness(const SubsetSumInstance& inst, const SubsetWitness& w) {
    if (w.take.size() != inst.items.size()) throw ShapeMismatch("witness size != item count");
    BigNat acc(0);
    for (std::size_t i = 0; i < inst.items.size(); i++)
        if (w.take[i]) acc += inst.items[i];
    return acc == inst.target;
}

}  // namespace

bool check_witness(const ProblemInstance& inst, const Witness& w) {
    if (const auto* p = std::get_if<PartitionInstance>(&inst)) {
        const auto* pw = std::get_if<PartitionWitness>(&w);
        if (!pw) throw ShapeMismatch("partition instance needs a partition witness");
        return check_partition_witness(*p, *pw);
    }
    if (const auto* g = std::get_if<GroupedInstance>(&inst)) {
        const auto* pw = std::get_if<PartitionWitness>(&w);
        if (!pw) throw ShapeMismatch("grouped instance needs a partition witness");
        return check_grouped_witness(*g, *pw);
    }
    if (const auto* s = std::get_if<SchedulingInstance>(&inst)) {
        const auto* sw = std::get_if<ScheduleWitness>(&w);
        if (!sw) throw ShapeMismatch("scheduling instance needs a schedule witness");
        return check_schedule_witness(*s, *sw);
    }
    if (const auto* v = std::get_if<VssInstance>(&inst)) {
        const auto* bw = std::get_if<SubsetWitness>(&w);
        if (!bw) throw ShapeMismatch("vss instance needs a subset witness");
        return check_vss_witness(*v, *bw);
    }
    const auto* bw = std::get_if<SubsetWitness>(&w);
    if (!bw) throw ShapeMismatch("subset-sum instance needs a subset witness");
    return check_subset_sum_witness(std::get<SubsetSumInstance>(inst), *bw);
}

}  // namespace forge
