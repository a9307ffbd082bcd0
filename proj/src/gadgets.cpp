#include "forge/gadgets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "forge/error.hpp"

namespace forge {

namespace {

// ceil(2/mu) for rational mu
std::uint64_t ceil_two_over(const Rational& mu) {
    BigNat num = BigNat(2) * mu.den();
    BigNat den = mu.num();
    BigNat q = num.div(den);
    if (!num.mod(den).is_zero()) q += BigNat(1);
    return q.to_u64();
}

void enumerate_vectors(std::uint64_t u, std::uint64_t d,
                       const std::function<void(const std::vector<std::uint64_t>&, std::uint64_t)>& f) {
    std::vector<std::uint64_t> y(d, 0);
    // odometer in lexicographic order over (y[0], ..., y[d-1])
    std::uint64_t norm_sq = 0;
    while (true) {
        f(y, norm_sq);
        std::size_t i = d;
        while (i > 0) {
            i--;
            if (y[i] < u) {
                norm_sq += 2 * y[i] + 1;
                y[i]++;
                break;
            }
            norm_sq -= y[i] * y[i];
            y[i] = 0;
            if (i == 0) return;
        }
    }
}

}  // namespace

AvgFreeSet behrend_set(std::uint64_t n, int k, const Rational& mu) {
    if (n < 1) throw Error("behrend_set: n >= 1 required");
    if (k < 2) throw Error("behrend_set: k >= 2 required");
    if (!(mu > Rational(BigNat(0)) && mu < Rational(BigNat(1))))
        throw Error("behrend_set: mu in (0,1) required");

    std::uint64_t d = ceil_two_over(mu) + 2;
    std::uint64_t u = iroot_ceil(BigNat(d) * BigNat(n), d - 2).to_u64();

    // class sizes per squared norm
    std::map<std::uint64_t, std::uint64_t> class_size;
    enumerate_vectors(u, d, [&](const std::vector<std::uint64_t>&, std::uint64_t s) {
        class_size[s]++;
    });
    std::uint64_t best_s = 0, best_count = 0;
    for (const auto& [s, count] : class_size) {
        if (count > best_count) {  // ties toward smaller s: strict
            best_count = count;
            best_s = s;
        }
    }
    if (best_count < n)
        throw InvariantViolation("behrend_set: largest norm class smaller than n");

    BigNat base = BigNat(2) * BigNat(std::uint64_t(k)) * BigNat(u);
    std::vector<BigNat> powers(d + 1);
    powers[0] = BigNat(1);
    for (std::uint64_t i = 1; i <= d; i++) powers[i] = powers[i - 1] * base;

    // keep the n lexicographically smallest vectors of the chosen class
    std::vector<BigNat> elements;
    elements.reserve(n);
    enumerate_vectors(u, d, [&](const std::vector<std::uint64_t>& y, std::uint64_t s) {
        if (s != best_s || elements.size() >= n) return;
        BigNat v = powers[d];
        for (std::uint64_t i = 0; i < d; i++) v += BigNat(y[i]) * powers[i];
        elements.push_back(v);
    });
    std::sort(elements.begin(), elements.end());

    AvgFreeSet out;
    out.elements = std::move(elements);
    out.k = k;
    out.U = BigNat(2) * powers[d];
    out.u = u;
    out.r_norm_sq = best_s;
    out.d = d;
    return out;
}

AvgFreeReport verify_avg_free(const std::vector<BigNat>& elements, int k) {
    std::uint64_t m = elements.size();
    // guard |B|^k <= 10^8
    long double est = 1;
    for (int i = 0; i < k; i++) {
        est *= (long double)(m == 0 ? 1 : m);
        if (est > 1e8L) throw TooLarge("verify_avg_free: |B|^k > 10^8");
    }

    std::vector<std::size_t> choice;
    AvgFreeReport report;
    report.ok = true;

    // combinations with repetition of size a, lexicographic
    std::function<bool(int, std::size_t, const BigNat&)> rec = [&](int a, std::size_t from,
                                                                   const BigNat& sum) -> bool {
        if (int(choice.size()) == a) {
            for (int b = 0; b <= k; b++) {
                for (std::size_t xi = 0; xi < m; xi++) {
                    BigNat rhs = BigNat(std::uint64_t(b)) * elements[xi];
                    if (sum != rhs) continue;
                    bool all_equal = true;
                    for (std::size_t ci : choice)
                        if (elements[ci] != elements[xi]) all_equal = false;
                    if (a != b || !all_equal) {
                        report.ok = false;
                        AvgFreeCounterexample ce;
                        ce.a = a;
                        ce.b = b;
                        for (std::size_t ci : choice) ce.xs.push_back(elements[ci]);
                        ce.x = elements[xi];
                        report.counterexample = ce;
                        return true;
                    }
                }
            }
            return false;
        }
        for (std::size_t i = from; i < m; i++) {
            choice.push_back(i);
            if (rec(a, i, sum + elements[i])) return true;
            choice.pop_back();
        }
        return false;
    };
    for (int a = 0; a <= k && report.ok; a++) {
        choice.clear();
        rec(a, 0, BigNat(0));
    }
    return report;
}

FillerMultiset filler_multiset(const BigNat& tau, int k) {
    if (tau < BigNat(1)) throw Error("filler_multiset: tau >= 1 required");
    if (k < 2) throw Error("filler_multiset: k >= 2 required");

    FillerMultiset out;
    out.tau = tau;
    out.k = k;

    BigNat ksq = BigNat(std::uint64_t(k)) * BigNat(std::uint64_t(k));
    if (tau < ksq) {
        out.unary = true;
        out.P.add(BigNat(1), tau.to_u64());
        return out;
    }

    std::uint64_t h = tau.div(ksq).floor_log2();
    BigNat two_h = BigNat::two_pow(h);
    BigNat b = two_h - BigNat(1);
    BigNat a = tau - BigNat(std::uint64_t(k - 1)) * b;
    std::uint64_t c = a.div(two_h).to_u64();

    out.h = h;
    out.a = a;
    out.c = c;
    for (std::uint64_t i = 0; i < h; i++) {
        std::uint64_t mult = std::uint64_t(k - 1) + (a.bit(i) ? 1 : 0);
        out.P.add(BigNat::two_pow(i), mult);
    }
    if (c > 0) out.P.add(two_h, c);
    if (out.P.sum() != tau) throw InvariantViolation("filler multiset sum mismatch");
    return out;
}

PartitionWitness split_filler(const FillerMultiset& filler, const std::vector<BigNat>& targets) {
    int k = filler.k;
    if (int(targets.size()) != k) throw ShapeMismatch("split_filler: need k targets");
    BigNat total(0);
    for (const auto& t : targets) total += t;
    if (total != filler.tau) throw BadCompositionSum("targets do not sum to tau");

    auto slots = filler.P.flatten();
    PartitionWitness w;
    w.bin_of.assign(slots.size(), 0);

    // sorted target order (proof assumes t_1 <= ... <= t_k); stable on ties
    std::vector<int> order;
    order.resize(std::size_t(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return targets[std::size_t(x)] < targets[std::size_t(y)]; });

    if (filler.unary) {
        std::size_t pos = 0;
        for (int bin = 0; bin < k; bin++) {
            std::uint64_t need = targets[std::size_t(bin)].to_u64();
            for (std::uint64_t i = 0; i < need; i++) w.bin_of[pos++] = bin + 1;
        }
        return w;
    }

    // slot ranges per value: flatten order is value-sorted
    std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> range;  // exp -> [next, end)
    {
        std::size_t pos = 0;
        for (const auto& [v, m] : filler.P.entries) {
            range[v.floor_log2()] = {pos, pos + m};
            pos += m;
        }
    }
    auto take_slot = [&](std::uint64_t exp, int bin) {
        auto& r = range[exp];
        if (r.first >= r.second) throw InvariantViolation("split_filler: out of slots");
        w.bin_of[r.first++] = bin;
    };

    BigNat two_h = BigNat::two_pow(filler.h);
    std::uint64_t used_c = 0;
    for (int i = 0; i + 1 < k; i++) {
        int orig = order[std::size_t(i)];
        const BigNat& t = targets[std::size_t(orig)];
        BigNat t_minus = t.mod(two_h);
        std::uint64_t t_plus_count = t.div(two_h).to_u64();
        for (std::uint64_t bit = 0; bit < filler.h; bit++)
            if (t_minus.bit(bit)) take_slot(bit, orig + 1);
        for (std::uint64_t cnt = 0; cnt < t_plus_count; cnt++) take_slot(filler.h, orig + 1);
        used_c += t_plus_count;
    }
    if (used_c > filler.c) throw InvariantViolation("split_filler: C exhausted");
    int last = order[std::size_t(k - 1)] + 1;
    for (auto& b : w.bin_of)
        if (b == 0) b = last;
    return w;
}

}  // namespace forge
