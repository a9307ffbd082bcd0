#include "forge/solvers.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "forge/error.hpp"

namespace forge {

std::uint64_t default_budget() {
    if (const char* env = std::getenv("REDUCE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 10'000'000;
}

// ---------------------------------------------------------------------------
// SAT

SolveReport sat_bruteforce(const CnfFormula& f) {
    if (f.num_vars > 24) throw GuardExceeded("sat_bruteforce: N > 24");
    f.validate();
    SolveReport report;
    std::uint64_t total = std::uint64_t(1) << f.num_vars;
    Assignment a(std::size_t(f.num_vars), false);
    for (std::uint64_t m = 0; m < total; m++) {
        report.states_explored++;
        // lexicographic: x_1 is the most significant position
        for (int v = 0; v < f.num_vars; v++)
            a[std::size_t(v)] = (m >> (f.num_vars - 1 - v)) & 1;
        if (formula_satisfied(f, a)) {
            report.yes = true;
            SubsetWitness w;
            w.take = std::vector<bool>(a.begin(), a.end());
            report.witness = w;
            return report;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Partition DFS

namespace {

struct PartitionGoal {
    bool exact = true;            // equal/targets mode vs capacity mode
    std::vector<BigNat> limit;    // per-bin target (exact) or capacity (<=)
};

std::optional<PartitionGoal> partition_goal(const PartitionInstance& inst) {
    PartitionGoal goal;
    if (inst.capacity) {
        goal.exact = false;
        goal.limit.assign(std::size_t(inst.k), *inst.capacity);
        return goal;
    }
    if (inst.targets) {
        goal.limit = *inst.targets;
        BigNat tsum(0);
        for (const auto& t : goal.limit) tsum += t;
        if (tsum != inst.items.sum()) return std::nullopt;  // immediate no
        return goal;
    }
    BigNat total = inst.items.sum();
    BigNat kk(std::uint64_t(inst.k));
    if (!total.divisible_by(kk)) return std::nullopt;
    goal.limit.assign(std::size_t(inst.k), total.div(kk));
    return goal;
}

}  // namespace

SolveReport partition_targets_bruteforce(const PartitionInstance& inst, std::uint64_t budget) {
    SolveReport report;
    auto goal = partition_goal(inst);
    if (!goal) return report;  // no

    auto items = inst.items.flatten();  // ascending
    std::size_t n = items.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::reverse(order.begin(), order.end());  // descending value

    std::vector<BigNat> remaining = goal->limit;
    std::vector<int> bin_of(n, 0);
    std::uint64_t nodes = 0;

    std::function<bool(std::size_t)> dfs = [&](std::size_t pos) -> bool {
        if (pos == n) {
            if (!goal->exact) return true;
            for (const auto& r : remaining)
                if (!r.is_zero()) return false;
            return true;
        }
        std::size_t idx = order[pos];
        const BigNat& x = items[idx];
        for (int b = 0; b < inst.k; b++) {
            if (remaining[std::size_t(b)] < x) continue;
            // bins with identical remaining capacity are interchangeable
            bool dup = false;
            for (int b2 = 0; b2 < b && !dup; b2++)
                if (remaining[std::size_t(b2)] == remaining[std::size_t(b)]) dup = true;
            if (dup) continue;
            if (++nodes > budget) throw GuardExceeded("partition DFS budget exceeded");
            remaining[std::size_t(b)] -= x;
            bin_of[idx] = b + 1;
            if (dfs(pos + 1)) return true;
            remaining[std::size_t(b)] += x;
        }
        return false;
    };

    report.yes = dfs(0);
    report.states_explored = nodes;
    if (report.yes) report.witness = PartitionWitness{bin_of};
    return report;
}

// ---------------------------------------------------------------------------
// Bounded equal-sum enumerator

namespace {

struct MitmResult {
    bool found = false;
    std::vector<char> in_first_bin;  // over the index list passed in
};

// Split `deltas` (indices into a delta array) into two bins of `cnt` items
// each where the first bin's delta sum is `target`. Meet in the middle.
MitmResult mitm_two_bins(const std::vector<std::size_t>& idx, const std::vector<std::uint64_t>& delta,
                         std::uint64_t cnt, std::uint64_t target, std::uint64_t budget,
                         std::uint64_t& nodes) {
    MitmResult res;
    std::size_t m = idx.size();
    std::size_t half = m / 2;
    if (m > 62) throw GuardExceeded("mitm: too many items");
    std::uint64_t combos_a = std::uint64_t(1) << half;
    std::uint64_t combos_b = std::uint64_t(1) << (m - half);
    nodes += combos_a + combos_b;
    if (nodes > budget) throw GuardExceeded("mitm budget exceeded");

    // (count, sum) -> mask over the first half
    std::unordered_map<std::uint64_t, std::unordered_map<std::uint64_t, std::uint64_t>> seen;
    for (std::uint64_t mask = 0; mask < combos_a; mask++) {
        std::uint64_t c = 0, s = 0;
        for (std::size_t i = 0; i < half; i++)
            if ((mask >> i) & 1) {
                c++;
                s += delta[idx[i]];
            }
        if (c > cnt || s > target) continue;
        auto& slot = seen[c][s];
        if (slot == 0) slot = mask | (std::uint64_t(1) << 63);  // mark present
    }
    for (std::uint64_t mask = 0; mask < combos_b; mask++) {
        std::uint64_t c = 0, s = 0;
        bool over = false;
        for (std::size_t i = 0; i < m - half && !over; i++)
            if ((mask >> i) & 1) {
                c++;
                s += delta[idx[half + i]];
                if (c > cnt || s > target) over = true;
            }
        if (over) continue;
        auto itc = seen.find(cnt - c);
        if (itc == seen.end()) continue;
        auto its = itc->second.find(target - s);
        if (its == itc->second.end()) continue;
        std::uint64_t amask = its->second & ~(std::uint64_t(1) << 63);
        res.found = true;
        res.in_first_bin.assign(m, 0);
        for (std::size_t i = 0; i < half; i++)
            if ((amask >> i) & 1) res.in_first_bin[i] = 1;
        for (std::size_t i = 0; i < m - half; i++)
            if ((mask >> i) & 1) res.in_first_bin[half + i] = 1;
        return res;
    }
    return res;
}

}  // namespace

SolveReport bounded_partition_bruteforce(const PartitionInstance& inst, std::uint64_t budget) {
    SolveReport report;
    std::uint64_t n = inst.n_items();
    if (n == 0) {
        report.yes = true;
        report.witness = PartitionWitness{{}};
        return report;
    }
    BigNat total = inst.items.sum();
    BigNat kk(std::uint64_t(inst.k));
    if (!total.divisible_by(kk) || n % std::uint64_t(inst.k) != 0) return report;  // no
    BigNat target = total.div(kk);
    std::uint64_t cnt = n / std::uint64_t(inst.k);

    auto items = inst.items.flatten();
    BigNat maxv = inst.items.max_value();
    // delta rescale: equal sums with forced per-bin cardinality cnt
    // translate to equal delta sums of cnt * max - target
    BigNat delta_target_big = BigNat(cnt) * maxv - target;
    std::vector<std::uint64_t> delta(items.size());
    bool fits = delta_target_big.fits_u64();
    for (std::size_t i = 0; i < items.size() && fits; i++) {
        BigNat d = maxv - items[i];
        if (!d.fits_u64())
            fits = false;
        else
            delta[i] = d.to_u64();
    }
    if (!fits) return partition_targets_bruteforce(inst, budget);
    std::uint64_t delta_target = delta_target_big.to_u64();

    std::uint64_t nodes = 0;
    std::vector<int> bin_of(items.size(), 0);
    std::vector<std::size_t> avail(items.size());
    std::iota(avail.begin(), avail.end(), 0);
    // descending delta helps the combination pruning
    std::sort(avail.begin(), avail.end(),
              [&](std::size_t a, std::size_t b) { return delta[a] > delta[b]; });

    // choose cnt items from avail with delta sum == delta_target, for bins
    // 1..k-2; the final two bins go through meet-in-the-middle
    std::function<bool(int, std::vector<std::size_t>&)> solve_bins =
        [&](int bin, std::vector<std::size_t>& pool) -> bool {
        if (std::size_t(inst.k - bin) == 2) {
            auto res = mitm_two_bins(pool, delta, cnt, delta_target, budget, nodes);
            if (!res.found) return false;
            for (std::size_t i = 0; i < pool.size(); i++)
                bin_of[pool[i]] = res.in_first_bin[i] ? bin + 1 : bin + 2;
            return true;
        }
        // suffix sums over the pool for pruning
        std::size_t m = pool.size();
        std::vector<std::uint64_t> suffix(m + 1, 0);
        for (std::size_t i = m; i > 0; i--) suffix[i - 1] = suffix[i] + delta[pool[i - 1]];
        std::vector<std::size_t> chosen;
        std::function<bool(std::size_t, std::uint64_t)> pick = [&](std::size_t from,
                                                                   std::uint64_t sum) -> bool {
            if (chosen.size() == cnt) {
                if (sum != delta_target) return false;
                std::vector<std::size_t> rest;
                std::vector<char> used(m, 0);
                for (auto c : chosen) used[c] = 1;
                for (std::size_t i = 0; i < m; i++)
                    if (!used[i]) rest.push_back(pool[i]);
                for (auto c : chosen) bin_of[pool[c]] = bin + 1;
                if (solve_bins(bin + 1, rest)) return true;
                for (auto c : chosen) bin_of[pool[c]] = 0;
                return false;
            }
            std::uint64_t need = cnt - chosen.size();
            for (std::size_t i = from; i + need <= m; i++) {
                if (++nodes > budget) throw GuardExceeded("bounded enumerator budget exceeded");
                std::uint64_t s2 = sum + delta[pool[i]];
                if (s2 > delta_target) continue;  // descending: later ones may fit
                // the need-1 largest picks still available sit right after i
                std::uint64_t max_rest = suffix[i + 1] - suffix[std::min(m, i + need)];
                if (s2 + max_rest < delta_target) break;  // no later window is larger
                chosen.push_back(i);
                if (pick(i + 1, s2)) return true;
                chosen.pop_back();
            }
            return false;
        };
        return pick(0, 0);
    };

    report.yes = solve_bins(0, avail);
    report.states_explored = nodes;
    if (report.yes) report.witness = PartitionWitness{bin_of};
    return report;
}

// ---------------------------------------------------------------------------
// Bin packing DP

SolveReport binpacking_dp(const PartitionInstance& inst, std::uint64_t budget) {
    if (!inst.capacity) throw Error("binpacking_dp needs a capacity");
    SolveReport report;
    if (!inst.capacity->fits_u64()) throw GuardExceeded("binpacking_dp: capacity exceeds 64 bits");
    std::uint64_t T = inst.capacity->to_u64();
    if (T >= budget) throw GuardExceeded("binpacking_dp: capacity over budget");
    auto items_big = inst.items.flatten();
    std::size_t n = items_big.size();
    std::vector<std::uint64_t> p(n);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; i++) {
        if (!items_big[i].fits_u64()) throw GuardExceeded("binpacking_dp: item exceeds 64 bits");
        p[i] = items_big[i].to_u64();
        total += p[i];
    }
    int dims = inst.k - 1;
    std::uint64_t states = 1;
    for (int d = 0; d < dims; d++) {
        if (states > budget / (T + 1)) throw GuardExceeded("binpacking_dp: table too large");
        states *= (T + 1);
    }
    if (states > budget || states * std::max<std::uint64_t>(n, 1) > 4 * budget)
        throw GuardExceeded("binpacking_dp: table too large");

    std::vector<std::uint64_t> stride(static_cast<std::size_t>(dims));
    for (int d = 0; d < dims; d++) stride[std::size_t(d)] = (d == 0) ? 1 : stride[std::size_t(d - 1)] * (T + 1);

    // choice[i][s]: bin (0..k-1) item i took to make s reachable; -1 unreached
    std::vector<std::vector<signed char>> choice(n, std::vector<signed char>(states, -1));
    std::vector<char> reach(states, 0), next(states, 0);
    reach[0] = 1;

    std::vector<std::uint64_t> loads(static_cast<std::size_t>(dims));
    for (std::size_t i = 0; i < n; i++) {
        std::fill(next.begin(), next.end(), 0);
        for (std::uint64_t s = 0; s < states; s++) {
            report.states_explored++;
            if (!reach[s]) continue;
            // decode loads
            std::uint64_t rem = s;
            for (int d = 0; d < dims; d++) {
                loads[std::size_t(d)] = rem % (T + 1);
                rem /= (T + 1);
            }
            for (int d = 0; d < dims; d++) {
                if (loads[std::size_t(d)] + p[i] > T) continue;
                std::uint64_t s2 = s + p[i] * stride[std::size_t(d)];
                if (!next[s2]) {
                    next[s2] = 1;
                    if (choice[i][s2] < 0) choice[i][s2] = (signed char)d;
                }
            }
            if (!next[s]) {
                next[s] = 1;
                if (choice[i][s] < 0) choice[i][s] = (signed char)(inst.k - 1);
            }
        }
        std::swap(reach, next);
    }

    for (std::uint64_t s = 0; s < states; s++) {
        if (!reach[s]) continue;
        std::uint64_t sum_first = 0, rem = s;
        for (int d = 0; d < dims; d++) {
            sum_first += rem % (T + 1);
            rem /= (T + 1);
        }
        if (total - sum_first > T) continue;
        report.yes = true;
        // walk backpointers
        std::vector<int> bin_of(n, inst.k);
        std::uint64_t cur = s;
        for (std::size_t i = n; i > 0; i--) {
            int b = choice[i - 1][cur];
            bin_of[i - 1] = b + 1;
            if (b < dims) cur -= p[i - 1] * stride[std::size_t(b)];
        }
        report.witness = PartitionWitness{bin_of};
        break;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Sum U_j DP (EDD order)

SolveReport sum_uj_dp(const SchedulingInstance& inst, std::uint64_t budget) {
    if (inst.objective != Objective::SumUj) throw Error("sum_uj_dp needs a sum_uj objective");
    inst.validate();
    SolveReport report;
    int k = inst.machines.k;
    std::size_t n = inst.jobs.size();

    std::vector<std::size_t> edd(n);
    std::iota(edd.begin(), edd.end(), 0);
    std::stable_sort(edd.begin(), edd.end(), [&](std::size_t a, std::size_t b) {
        return *inst.jobs[a].d < *inst.jobs[b].d;
    });

    BigNat totalBig = inst.total_processing();
    if (!totalBig.fits_u64()) throw GuardExceeded("sum_uj_dp: total processing exceeds 64 bits");
    std::uint64_t T = totalBig.to_u64();
    if (T >= budget) throw GuardExceeded("sum_uj_dp: T over budget");
    int dims = k - 1;
    std::uint64_t load_states = 1;
    for (int d = 0; d < dims; d++) {
        if (load_states > budget / (T + 1)) throw GuardExceeded("sum_uj_dp: table too large");
        load_states *= (T + 1);
    }
    if ((n + 1) * (n + 2) > budget / std::max<std::uint64_t>(load_states, 1))
        throw GuardExceeded("sum_uj_dp: table too large");

    constexpr std::uint64_t INF = UINT64_MAX;
    std::vector<std::uint64_t> stride(std::size_t(std::max(dims, 1)), 1);
    for (int d = 1; d < dims; d++) stride[std::size_t(d)] = stride[std::size_t(d - 1)] * (T + 1);

    auto fits_due = [&](std::uint64_t load, int machine, const BigNat& due) {
        Rational sp = inst.machines.speed(machine);
        return BigNat(load) * sp.den() <= due * sp.num();
    };

    // layers[j][t][loads] = minimum load of the k-th machine
    std::vector<std::vector<std::vector<std::uint64_t>>> layers(n + 1);
    layers[0].assign(n + 2, std::vector<std::uint64_t>(load_states, INF));
    layers[0][0][0] = 0;
    std::vector<std::uint64_t> loads(std::size_t(std::max(dims, 1)));
    for (std::size_t jj = 1; jj <= n; jj++) {
        const Job& job = inst.jobs[edd[jj - 1]];
        std::uint64_t pj = job.p.to_u64();
        layers[jj].assign(n + 2, std::vector<std::uint64_t>(load_states, INF));
        for (std::uint64_t t = 0; t <= jj; t++)
            for (std::uint64_t s = 0; s < load_states; s++) {
                report.states_explored++;
                std::uint64_t best = INF;
                if (t >= 1) best = std::min(best, layers[jj - 1][t - 1][s]);
                std::uint64_t rem = s;
                for (int d = 0; d < dims; d++) {
                    loads[std::size_t(d)] = rem % (T + 1);
                    rem /= (T + 1);
                }
                for (int d = 0; d < dims; d++) {
                    std::uint64_t ld = loads[std::size_t(d)];
                    if (ld < pj || !fits_due(ld, d, *job.d)) continue;
                    best = std::min(best, layers[jj - 1][t][s - pj * stride[std::size_t(d)]]);
                }
                std::uint64_t via_k = layers[jj - 1][t][s];
                if (via_k != INF && fits_due(via_k + pj, k - 1, *job.d))
                    best = std::min(best, via_k + pj);
                layers[jj][t][s] = best;
            }
    }

    std::uint64_t best_t = INF, best_state = 0;
    for (std::uint64_t t = 0; t <= n && best_t == INF; t++)
        for (std::uint64_t s = 0; s < load_states; s++)
            if (layers[n][t][s] != INF) {
                best_t = t;
                best_state = s;
                break;
            }
    if (best_t == INF) throw InvariantViolation("sum_uj_dp: no state at all");  // all-tardy always works
    report.yes = !(inst.lambda.negative && !inst.lambda.magnitude.is_zero()) &&
                 BigNat(best_t) <= inst.lambda.magnitude;
    if (!report.yes) return report;

    // walk the recurrence backwards for an assignment
    std::vector<int> machine_of(n, -1);  // -1 = tardy, else 0..k-1 (EDD positions)
    {
        std::uint64_t t = best_t, s = best_state, val = layers[n][best_t][best_state];
        for (std::size_t jj = n; jj > 0; jj--) {
            const Job& job = inst.jobs[edd[jj - 1]];
            std::uint64_t pj = job.p.to_u64();
            if (t >= 1 && layers[jj - 1][t - 1][s] == val) {
                machine_of[jj - 1] = -1;
                t--;
                continue;
            }
            std::uint64_t rem = s;
            for (int d = 0; d < dims; d++) {
                loads[std::size_t(d)] = rem % (T + 1);
                rem /= (T + 1);
            }
            bool placed = false;
            for (int d = 0; d < dims && !placed; d++) {
                std::uint64_t ld = loads[std::size_t(d)];
                if (ld < pj || !fits_due(ld, d, *job.d)) continue;
                std::uint64_t s2 = s - pj * stride[std::size_t(d)];
                if (layers[jj - 1][t][s2] == val) {
                    machine_of[jj - 1] = d;
                    s = s2;
                    placed = true;
                }
            }
            if (!placed) {
                machine_of[jj - 1] = k - 1;
                val -= pj;
            }
        }
    }

    // Build a compact schedule: per machine in EDD order, tardy jobs last.
    ScheduleWitness w;
    w.placements.resize(n);
    std::vector<BigNat> cursor(std::size_t(k), BigNat(0));
    for (std::size_t jj = 0; jj < n; jj++) {
        if (machine_of[jj] < 0) continue;
        std::size_t job_idx = edd[jj];
        int m = machine_of[jj];
        w.placements[job_idx] = {m + 1, cursor[std::size_t(m)]};
        cursor[std::size_t(m)] += inst.jobs[job_idx].p;
    }
    for (std::size_t jj = 0; jj < n; jj++) {
        if (machine_of[jj] >= 0) continue;
        std::size_t job_idx = edd[jj];
        w.placements[job_idx] = {1, cursor[0]};
        cursor[0] += inst.jobs[job_idx].p;
    }
    report.witness = w;
    return report;
}

// ---------------------------------------------------------------------------
// Scheduling brute force

namespace {

// Signed exact rational, for objective values (lateness may be negative,
// makespans on uniform machines may be fractional).
struct SignedRat {
    bool negative = false;
    Rational mag;

    static SignedRat of(const Rational& r) { return {false, r}; }
    bool is_zero() const { return mag == Rational(BigNat(0)); }
};

bool sr_le(const SignedRat& a, const SignedRat& b) {
    bool an = a.negative && !a.is_zero();
    bool bn = b.negative && !b.is_zero();
    if (an && !bn) return true;
    if (!an && bn) return false;
    if (an && bn) return a.mag >= b.mag;
    return a.mag <= b.mag;
}

bool sr_lt(const SignedRat& a, const SignedRat& b) {
    return sr_le(a, b) && !(sr_le(b, a));
}

SignedRat lambda_to_sr(const SignedBig& lambda) {
    return {lambda.negative, Rational(lambda.magnitude)};
}

struct SchedOpt {
    SignedRat value;  // exact optimum
    ScheduleWitness witness;
};

Rational machine_completion(const SchedulingInstance& inst, int m, const BigNat& load) {
    Rational sp = inst.machines.speed(m);
    return Rational(load * sp.den(), sp.num());
}

// Enumerate machine assignments; per-machine job order fixed by `order`
// (a permutation of job indices: jobs appear on their machine in this
// relative order). Evaluates the objective exactly.
SchedOpt enumerate_assignments(const SchedulingInstance& inst, const std::vector<std::size_t>& order,
                               std::uint64_t budget, std::uint64_t& nodes) {
    int k = inst.machines.k;
    std::size_t n = inst.jobs.size();
    SchedOpt best;
    bool have_best = false;

    std::vector<int> assign(n, 0);
    std::vector<std::vector<std::size_t>> machine_jobs(static_cast<std::size_t>(k));

    std::function<void()> evaluate = [&]() {
        for (auto& mj : machine_jobs) mj.clear();
        for (std::size_t pos = 0; pos < n; pos++)
            machine_jobs[std::size_t(assign[pos])].push_back(order[pos]);
        ScheduleWitness w;
        w.placements.resize(n);
        Rational acc(BigNat(0));
        Rational cmax(BigNat(0));
        std::optional<SignedRat> lmax;
        for (int m = 0; m < k; m++) {
            BigNat cursor(0);
            for (std::size_t j : machine_jobs[std::size_t(m)]) {
                const Job& job = inst.jobs[j];
                BigNat start = cursor;
                if (job.r && *job.r > start) start = *job.r;
                w.placements[j] = {m + 1, start};
                cursor = start + job.p;
                Rational completion = machine_completion(inst, m, cursor);
                switch (inst.objective) {
                    case Objective::Cmax:
                        if (completion > cmax) cmax = completion;
                        break;
                    case Objective::SumUj:
                        if (completion > Rational(*job.d)) acc = acc + Rational(BigNat(1));
                        break;
                    case Objective::SumPjUj:
                        if (completion > Rational(*job.d)) acc = acc + Rational(job.p);
                        break;
                    case Objective::SumWjCj:
                        acc = acc + completion * *job.w;
                        break;
                    case Objective::Lmax:
                    case Objective::Tmax: {
                        Rational due(*job.d);
                        SignedRat late = completion >= due ? SignedRat::of(completion - due)
                                                           : SignedRat{true, due - completion};
                        if (!lmax || sr_lt(*lmax, late)) lmax = late;
                        break;
                    }
                }
            }
        }
        SignedRat value;
        switch (inst.objective) {
            case Objective::Cmax:
                value = SignedRat::of(cmax);
                break;
            case Objective::SumUj:
            case Objective::SumPjUj:
            case Objective::SumWjCj:
                value = SignedRat::of(acc);
                break;
            case Objective::Lmax:
                value = lmax.value_or(SignedRat{});
                break;
            case Objective::Tmax: {
                SignedRat l = lmax.value_or(SignedRat{});
                value = (l.negative && !l.is_zero()) ? SignedRat{} : l;
                break;
            }
        }
        if (!have_best || sr_lt(value, best.value)) {
            best.value = value;
            best.witness = w;
            have_best = true;
        }
    };

    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == n) {
            evaluate();
            return;
        }
        for (int m = 0; m < k; m++) {
            if (++nodes > budget) throw GuardExceeded("sched_bruteforce budget exceeded");
            assign[pos] = m;
            rec(pos + 1);
        }
    };
    if (n == 0)
        evaluate();
    else
        rec(0);
    return best;
}

}  // namespace

SolveReport sched_bruteforce(const SchedulingInstance& inst, std::uint64_t budget) {
    inst.validate();
    SolveReport report;
    std::size_t n = inst.jobs.size();
    int k = inst.machines.k;
    std::uint64_t nodes = 0;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    switch (inst.objective) {
        case Objective::Cmax: {
            // earliest release first is optimal per machine
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                BigNat ra = inst.jobs[a].r.value_or(BigNat(0));
                BigNat rb = inst.jobs[b].r.value_or(BigNat(0));
                return ra < rb;
            });
            break;
        }
        case Objective::SumWjCj: {
            // Smith's rule: ascending p/w
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return inst.jobs[a].p * *inst.jobs[b].w < inst.jobs[b].p * *inst.jobs[a].w;
            });
            break;
        }
        default: {
            // EDD
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return *inst.jobs[a].d < *inst.jobs[b].d;
            });
            break;
        }
    }

    if (inst.objective == Objective::SumUj || inst.objective == Objective::SumPjUj) {
        // enumerate the tardy set; the on-time set must be schedulable with
        // zero tardiness (checked by assignment enumeration in EDD order)
        if (n > 20) throw GuardExceeded("sched_bruteforce: too many jobs for tardy enumeration");
        std::optional<BigNat> best;
        std::uint64_t best_mask = 0;
        ScheduleWitness best_witness;
        std::vector<std::size_t> ontime;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); mask++) {
            BigNat value(0);
            for (std::size_t pos = 0; pos < n; pos++)
                if ((mask >> pos) & 1)
                    value += inst.objective == Objective::SumUj ? BigNat(1) : inst.jobs[order[pos]].p;
            if (best && value >= *best) continue;
            ontime.clear();
            for (std::size_t pos = 0; pos < n; pos++)
                if (!((mask >> pos) & 1)) ontime.push_back(order[pos]);
            // DFS: place on-time jobs in EDD order, all must meet due dates
            std::vector<BigNat> load(std::size_t(k), BigNat(0));
            std::vector<int> mach(ontime.size(), 0);
            std::function<bool(std::size_t)> place = [&](std::size_t pos) -> bool {
                if (pos == ontime.size()) return true;
                const Job& job = inst.jobs[ontime[pos]];
                for (int m = 0; m < k; m++) {
                    if (++nodes > budget) throw GuardExceeded("sched_bruteforce budget exceeded");
                    bool dup = false;
                    for (int m2 = 0; m2 < m && !dup; m2++)
                        if (load[std::size_t(m2)] == load[std::size_t(m)] &&
                            inst.machines.speed(m2) == inst.machines.speed(m))
                            dup = true;
                    if (dup) continue;
                    BigNat nl = load[std::size_t(m)] + job.p;
                    if (machine_completion(inst, m, nl) <= Rational(*job.d)) {
                        load[std::size_t(m)] = nl;
                        mach[pos] = m;
                        if (place(pos + 1)) return true;
                        load[std::size_t(m)] = nl - job.p;
                    }
                }
                return false;
            };
            if (place(0)) {
                best = value;
                best_mask = mask;
                ScheduleWitness w;
                w.placements.resize(n);
                std::vector<BigNat> cursor(std::size_t(k), BigNat(0));
                for (std::size_t pos = 0; pos < ontime.size(); pos++) {
                    int m = mach[pos];
                    w.placements[ontime[pos]] = {m + 1, cursor[std::size_t(m)]};
                    cursor[std::size_t(m)] += inst.jobs[ontime[pos]].p;
                }
                for (std::size_t pos = 0; pos < n; pos++)
                    if ((best_mask >> pos) & 1) {
                        std::size_t j = order[pos];
                        w.placements[j] = {1, cursor[0]};
                        cursor[0] += inst.jobs[j].p;
                    }
                best_witness = w;
                if (best->is_zero()) break;
            }
        }
        report.states_explored = nodes;
        if (!best) throw InvariantViolation("tardy enumeration found nothing");  // mask=all always works
        report.optimum = SignedBig::of(*best);
        report.yes = sr_le(SignedRat::of(Rational(*best)), lambda_to_sr(inst.lambda));
        if (report.yes) report.witness = best_witness;
        return report;
    }

    double combos = 1;
    for (std::size_t i = 0; i < n; i++) {
        combos *= k;
        if (combos > double(budget)) throw GuardExceeded("sched_bruteforce: k^n over budget");
    }
    SchedOpt opt = enumerate_assignments(inst, order, budget, nodes);
    report.states_explored = nodes;
    if (opt.value.mag.is_integer())
        report.optimum = SignedBig{opt.value.negative, opt.value.mag.floor()};
    report.yes = sr_le(opt.value, lambda_to_sr(inst.lambda));
    if (report.yes) report.witness = opt.witness;
    return report;
}

// ---------------------------------------------------------------------------
// Grouped checkers

namespace {

struct GroupedTargets {
    bool feasible = true;
    std::vector<BigNat> t;  // size k-1
};

GroupedTargets grouped_targets(const GroupedInstance& inst) {
    GroupedTargets gt;
    if (inst.targets) {
        gt.t = *inst.targets;
        return gt;
    }
    Rational mu = inst.mu();
    if (!mu.is_integer()) {
        gt.feasible = false;
        return gt;
    }
    gt.t.assign(std::size_t(inst.k) - 1, mu.floor());
    return gt;
}

}  // namespace

SolveReport check_grouped_yes(const GroupedInstance& inst, std::uint64_t budget) {
    SolveReport report;
    auto gt = grouped_targets(inst);
    if (!gt.feasible) return report;
    int bins = inst.k - 1;
    std::size_t q = inst.groups.size();
    std::uint64_t s = inst.s;
    std::uint64_t nodes = 0;

    // per-group min/max selection sums for one bin (s smallest / s largest),
    // scaled by the number of bins for suffix pruning
    std::vector<BigNat> suf_min(q + 1, BigNat(0)), suf_max(q + 1, BigNat(0));
    for (std::size_t g = q; g > 0; g--) {
        auto flat = inst.groups[g - 1].flatten();
        BigNat mn(0), mx(0);
        for (std::uint64_t i = 0; i < s; i++) mn += flat[i];
        for (std::uint64_t i = 0; i < s; i++) mx += flat[flat.size() - 1 - i];
        suf_min[g - 1] = suf_min[g] + mn;
        suf_max[g - 1] = suf_max[g] + mx;
    }

    // loads carried across groups; memoised failures keyed on loads
    std::vector<BigNat> load(std::size_t(bins), BigNat(0));
    std::vector<std::set<std::vector<BigNat>>> failed(q);
    // chosen counts per group / distinct value / bin for the witness
    std::vector<std::vector<std::vector<std::uint64_t>>> pick(q);
    for (std::size_t g = 0; g < q; g++)
        pick[g].assign(inst.groups[g].entries.size(),
                       std::vector<std::uint64_t>(std::size_t(bins), 0));

    std::function<bool(std::size_t)> group_rec = [&](std::size_t g) -> bool {
        if (g == q) {
            for (int b = 0; b < bins; b++)
                if (load[std::size_t(b)] != gt.t[std::size_t(b)]) return false;
            return true;
        }
        for (int b = 0; b < bins; b++) {
            if (load[std::size_t(b)] > gt.t[std::size_t(b)]) return false;
            BigNat need = gt.t[std::size_t(b)] - load[std::size_t(b)];
            if (need < suf_min[g] || need > suf_max[g]) return false;
        }
        if (failed[g].count(load)) return false;

        const auto& entries = inst.groups[g].entries;
        std::vector<std::uint64_t> cnt(std::size_t(bins), 0);

        std::function<bool(std::size_t)> value_rec = [&](std::size_t vi) -> bool {
            if (vi == entries.size()) {
                for (int b = 0; b < bins; b++)
                    if (cnt[std::size_t(b)] != s) return false;
                return group_rec(g + 1);
            }
            const auto& [value, mult] = entries[vi];
            // distribute 0..mult copies of `value` over the bins
            std::function<bool(int, std::uint64_t)> bin_rec = [&](int b, std::uint64_t used) -> bool {
                if (b == bins) return value_rec(vi + 1);
                std::uint64_t room = std::min(mult - used, s - cnt[std::size_t(b)]);
                for (std::uint64_t c = 0; c <= room; c++) {
                    if (++nodes > budget) throw GuardExceeded("check_grouped_yes budget exceeded");
                    BigNat add = value * BigNat(c);
                    if (load[std::size_t(b)] + add > gt.t[std::size_t(b)]) break;
                    cnt[std::size_t(b)] += c;
                    load[std::size_t(b)] += add;
                    pick[g][vi][std::size_t(b)] = c;
                    if (bin_rec(b + 1, used + c)) return true;
                    cnt[std::size_t(b)] -= c;
                    load[std::size_t(b)] -= add;
                    pick[g][vi][std::size_t(b)] = 0;
                }
                return false;
            };
            return bin_rec(0, 0);
        };

        if (value_rec(0)) return true;
        failed[g].insert(load);
        return false;
    };

    report.yes = group_rec(0);
    report.states_explored = nodes;
    if (report.yes) {
        PartitionWitness w;
        for (std::size_t g = 0; g < q; g++) {
            const auto& entries = inst.groups[g].entries;
            for (std::size_t vi = 0; vi < entries.size(); vi++) {
                std::uint64_t placed = 0;
                for (int b = 0; b < bins; b++)
                    for (std::uint64_t c = 0; c < pick[g][vi][std::size_t(b)]; c++, placed++)
                        w.bin_of.push_back(b + 1);
                for (; placed < entries[vi].second; placed++) w.bin_of.push_back(0);
            }
        }
        report.witness = w;
    }
    return report;
}

SolveReport check_grouped_no_condition(const GroupedInstance& inst, std::uint64_t budget) {
    SolveReport report;
    auto gt = grouped_targets(inst);
    if (!gt.feasible) return report;  // loads can never hit a fractional mu
    int bins = inst.k - 1;
    std::size_t q = inst.groups.size();
    std::uint64_t s = inst.s;
    std::uint64_t qs = q * s;
    std::uint64_t ks = std::uint64_t(inst.k) * s;
    std::uint64_t nodes = 0;

    std::vector<BigNat> suf_sum(q + 1, BigNat(0));
    std::vector<BigNat> suf_min_item(q + 1, BigNat(0)), suf_max_item(q + 1, BigNat(0));
    for (std::size_t g = q; g > 0; g--) {
        suf_sum[g - 1] = suf_sum[g] + inst.groups[g - 1].sum();
        BigNat mn = inst.groups[g - 1].entries.front().first;
        BigNat mx = inst.groups[g - 1].max_value();
        suf_min_item[g - 1] = (g == q || mn < suf_min_item[g]) ? mn : suf_min_item[g];
        suf_max_item[g - 1] = (g == q || mx > suf_max_item[g]) ? mx : suf_max_item[g];
    }

    std::vector<BigNat> load(std::size_t(bins), BigNat(0));
    std::vector<std::uint64_t> count(std::size_t(bins), 0);

    std::function<bool(std::size_t)> group_rec = [&](std::size_t g) -> bool {
        for (int b = 0; b < bins; b++) {
            if (load[std::size_t(b)] > gt.t[std::size_t(b)]) return false;
            if (count[std::size_t(b)] > g * s) return false;  // prefix condition
        }
        if (g == q) {
            for (int b = 0; b < bins; b++) {
                if (count[std::size_t(b)] != qs) return false;
                if (load[std::size_t(b)] != gt.t[std::size_t(b)]) return false;
            }
            return true;
        }
        // count/sum coupling with the remaining items
        std::uint64_t total_need = 0;
        for (int b = 0; b < bins; b++) {
            std::uint64_t need_cnt = qs - count[std::size_t(b)];
            total_need += need_cnt;
            BigNat need_load = gt.t[std::size_t(b)] - load[std::size_t(b)];
            if (need_load < BigNat(need_cnt) * suf_min_item[g]) return false;
            if (need_load > BigNat(need_cnt) * suf_max_item[g]) return false;
        }
        if (total_need > ks * (q - g)) return false;

        const auto& entries = inst.groups[g].entries;
        std::function<bool(std::size_t)> value_rec = [&](std::size_t vi) -> bool {
            if (vi == entries.size()) return group_rec(g + 1);
            const auto& [value, mult] = entries[vi];
            std::function<bool(int, std::uint64_t)> bin_rec = [&](int b, std::uint64_t used) -> bool {
                if (b == bins) return value_rec(vi + 1);
                std::uint64_t cap = (g + 1) * s - count[std::size_t(b)];
                std::uint64_t room = std::min(mult - used, cap);
                for (std::uint64_t c = 0; c <= room; c++) {
                    if (++nodes > budget)
                        throw GuardExceeded("check_grouped_no_condition budget exceeded");
                    BigNat add = value * BigNat(c);
                    if (load[std::size_t(b)] + add > gt.t[std::size_t(b)]) break;
                    count[std::size_t(b)] += c;
                    load[std::size_t(b)] += add;
                    if (bin_rec(b + 1, used + c)) return true;
                    count[std::size_t(b)] -= c;
                    load[std::size_t(b)] -= add;
                }
                return false;
            };
            return bin_rec(0, 0);
        };
        return value_rec(0);
    };

    report.yes = group_rec(0);
    report.states_explored = nodes;
    return report;
}

WeakVerdict solve_weak_grouped(const GroupedInstance& inst, std::uint64_t budget) {
    if (check_grouped_yes(inst, budget).yes) return WeakVerdict::Yes;
    if (!check_grouped_no_condition(inst, budget).yes) return WeakVerdict::No;
    return WeakVerdict::PromiseViolated;
}

// ---------------------------------------------------------------------------
// Vector subset sum

SolveReport vss_dp(const VssInstance& inst, std::uint64_t budget) {
    inst.validate();
    SolveReport report;
    int k = inst.k;
    std::uint64_t states = 1;
    std::vector<std::uint64_t> t(static_cast<std::size_t>(k)), stride(static_cast<std::size_t>(k));
    for (int c = 0; c < k; c++) {
        if (!inst.target[std::size_t(c)].fits_u64())
            throw GuardExceeded("vss_dp: target exceeds 64 bits");
        t[std::size_t(c)] = inst.target[std::size_t(c)].to_u64();
        stride[std::size_t(c)] = states;
        if (t[std::size_t(c)] >= budget || states > budget / (t[std::size_t(c)] + 1))
            throw GuardExceeded("vss_dp: table too large");
        states *= t[std::size_t(c)] + 1;
    }

    std::size_t n = inst.vectors.size();
    std::vector<std::int32_t> parent(states, -2);
    parent[0] = -1;

    std::vector<std::uint64_t> x(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < n; i++) {
        bool ok = true, zero = true;
        std::uint64_t xlin = 0;
        for (int c = 0; c < k && ok; c++) {
            const BigNat& v = inst.vectors[i][std::size_t(c)];
            if (!v.fits_u64() || v.to_u64() > t[std::size_t(c)]) ok = false;
            else {
                x[std::size_t(c)] = v.to_u64();
                if (x[std::size_t(c)] > 0) zero = false;
                xlin += x[std::size_t(c)] * stride[std::size_t(c)];
            }
        }
        if (!ok || zero) continue;  // cannot help / changes nothing
        for (std::uint64_t lin = states; lin > 0; lin--) {
            report.states_explored++;
            std::uint64_t sidx = lin - 1;
            if (parent[sidx] == -2) continue;
            // componentwise add, valid only without radix overflow
            std::uint64_t rem = sidx;
            bool fits = true;
            for (int c = 0; c < k && fits; c++) {
                std::uint64_t coord = rem % (t[std::size_t(c)] + 1);
                rem /= (t[std::size_t(c)] + 1);
                if (coord + x[std::size_t(c)] > t[std::size_t(c)]) fits = false;
            }
            if (!fits) continue;
            std::uint64_t nidx = sidx + xlin;
            if (parent[nidx] == -2) parent[nidx] = std::int32_t(i);
        }
    }

    std::uint64_t goal = states - 1;
    if (parent[goal] == -2) return report;
    report.yes = true;
    SubsetWitness w;
    w.take.assign(n, false);
    std::uint64_t cur = goal;
    while (parent[cur] != -1) {
        std::int32_t i = parent[cur];
        w.take[std::size_t(i)] = true;
        std::uint64_t xlin = 0;
        for (int c = 0; c < k; c++)
            xlin += inst.vectors[std::size_t(i)][std::size_t(c)].to_u64() * stride[std::size_t(c)];
        cur -= xlin;
    }
    report.witness = w;
    return report;
}

SolveReport vss_bruteforce(const VssInstance& inst, std::uint64_t budget) {
    inst.validate();
    SolveReport report;
    std::size_t n = inst.vectors.size();
    if (n > 30 || (std::uint64_t(1) << n) > budget)
        throw GuardExceeded("vss_bruteforce: 2^n over budget");
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); mask++) {
        report.states_explored++;
        std::vector<BigNat> acc(std::size_t(inst.k), BigNat(0));
        for (std::size_t i = 0; i < n; i++)
            if ((mask >> i) & 1)
                for (int c = 0; c < inst.k; c++)
                    acc[std::size_t(c)] += inst.vectors[i][std::size_t(c)];
        if (std::equal(acc.begin(), acc.end(), inst.target.begin())) {
            report.yes = true;
            SubsetWitness w;
            w.take.assign(n, false);
            for (std::size_t i = 0; i < n; i++) w.take[i] = (mask >> i) & 1;
            report.witness = w;
            return report;
        }
    }
    return report;
}

SolveReport subset_sum_bruteforce(const SubsetSumInstance& inst, std::uint64_t budget) {
    VssInstance v;
    v.k = 1;
    v.target = {inst.target};
    for (const auto& x : inst.items) v.vectors.push_back({x});
    return vss_bruteforce(v, budget);
}

SolveReport subset_sum_dp(const SubsetSumInstance& inst, std::uint64_t budget) {
    VssInstance v;
    v.k = 1;
    v.target = {inst.target};
    for (const auto& x : inst.items) v.vectors.push_back({x});
    return vss_dp(v, budget);
}

// ---------------------------------------------------------------------------
// Dispatcher

SolveReport solve_auto(const ProblemInstance& inst, std::uint64_t budget) {
    if (const auto* p = std::get_if<PartitionInstance>(&inst)) {
        if (p->is_bin_packing()) {
            bool small = p->capacity->fits_u64();
            for (const auto& [v, m] : p->items.entries)
                if (!v.fits_u64()) small = false;
            if (small) {
                std::uint64_t T = p->capacity->to_u64();
                std::uint64_t states = 1;
                bool fits = true;
                for (int d = 0; d + 1 < p->k && fits; d++) {
                    if (states > budget / (T + 1) + 1) fits = false;
                    states *= (T + 1);
                    if (states > budget) fits = false;
                }
                if (fits) return binpacking_dp(*p, budget);
            }
            return partition_targets_bruteforce(*p, budget);
        }
        if (p->is_bounded() && !p->has_targets()) return bounded_partition_bruteforce(*p, budget);
        return partition_targets_bruteforce(*p, budget);
    }
    if (const auto* g = std::get_if<GroupedInstance>(&inst)) return check_grouped_yes(*g, budget);
    if (const auto* s = std::get_if<SchedulingInstance>(&inst)) {
        if (s->objective == Objective::SumUj) {
            BigNat T = s->total_processing();
            if (T.fits_u64()) {
                std::uint64_t cells = 1;
                bool fits = true;
                std::uint64_t tt = T.to_u64();
                for (int d = 0; d + 1 < s->machines.k && fits; d++) {
                    if (cells > budget / (tt + 1) + 1) fits = false;
                    cells *= tt + 1;
                }
                std::size_t n1 = s->jobs.size() + 1;
                if (fits && cells <= budget / (n1 * n1) + 1) {
                    try {
                        return sum_uj_dp(*s, budget);
                    } catch (const GuardExceeded&) {
                    }
                }
            }
        }
        return sched_bruteforce(*s, budget);
    }
    if (const auto* v = std::get_if<VssInstance>(&inst)) {
        try {
            return vss_dp(*v, budget);
        } catch (const GuardExceeded&) {
            return vss_bruteforce(*v, budget);
        }
    }
    const auto& ss = std::get<SubsetSumInstance>(inst);
    try {
        return subset_sum_dp(ss, budget);
    } catch (const GuardExceeded&) {
        return subset_sum_bruteforce(ss, budget);
    }
}

}  // namespace forge
