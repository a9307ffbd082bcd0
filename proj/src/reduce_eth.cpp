#include "forge/reduce_eth.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "forge/error.hpp"

namespace forge {

namespace {

std::string block_I(int l) { return "I" + std::to_string(l); }
std::string block_II(int p) { return "II" + std::to_string(p); }
std::string block_III(int l1, int l2) {
    return "III_" + std::to_string(l1) + "_" + std::to_string(l2);
}
std::string block_ch(std::size_t c) { return "ch" + std::to_string(c); }

int group_of_clause(int i, int M, int k) {
    // l(i) = ceil(i*(k-1)/M)
    return int((std::int64_t(i) * (k - 1) + M - 1) / M);
}

int pos_of_clause(int i, int M, int k) {
    int width = M / (k - 1);
    int p = i % width;
    return p == 0 ? width : p;  // representative width instead of 0
}

}  // namespace

std::string EthItem::id() const {
    switch (kind) {
        case Kind::Assignment:
            // alpha over the clause's sorted variables, encoded as a mask
            return "z(" + std::to_string(i) + "," + std::to_string(alpha_mask) + ")";
        case Kind::Dummy:
            return "d(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(x) + ")";
        case Kind::DummyPrime:
            return "d'(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(x) + ")";
    }
    throw Error("bad item kind");
}

CnfFormula pad_formula(const CnfFormula& f, int k) {
    if (k < 2) throw Error("pad_formula: k >= 2 required");
    f.validate();
    CnfFormula out = f;
    int width = k - 1;
    while (out.num_clauses() % width != 0) {
        if (out.num_vars == 0) out.num_vars = 1;
        out.clauses.push_back(Clause{{1, -1}});
    }
    return out;
}

ChannelPlan allocate_channels(const CnfFormula& padded, int k) {
    int M = padded.num_clauses();
    if (M % (k - 1) != 0) throw Error("allocate_channels: M not divisible by k-1");
    int delta = padded.max_occurrences();

    ChannelPlan plan;
    plan.num_channels = std::uint64_t(6) * std::uint64_t(delta) * std::uint64_t(M / (k - 1));
    plan.full_bins.resize(plan.num_channels);

    // communication tuples in lexicographic (i, j, x) order
    std::vector<std::vector<int>> vars(static_cast<std::size_t>(M));
    for (int i = 1; i <= M; i++) vars[std::size_t(i - 1)] = padded.clauses[std::size_t(i - 1)].variables();
    for (int i = 1; i <= M; i++) {
        for (int j = i + 1; j <= M; j++) {
            std::vector<int> shared;
            std::set_intersection(vars[std::size_t(i - 1)].begin(), vars[std::size_t(i - 1)].end(),
                                  vars[std::size_t(j - 1)].begin(), vars[std::size_t(j - 1)].end(),
                                  std::back_inserter(shared));
            for (int x : shared) {
                CommunicationTuple t;
                t.i = i;
                t.j = j;
                t.x = x;
                t.external = group_of_clause(i, M, k) != group_of_clause(j, M, k);
                plan.tuples.push_back(t);
            }
        }
    }

    for (const auto& t : plan.tuples) {
        int l1 = group_of_clause(t.i, M, k);
        int l2 = group_of_clause(t.j, M, k);
        bool assigned = false;
        for (std::size_t c = 0; c < plan.num_channels && !assigned; c++) {
            auto& full = plan.full_bins[c];
            bool open = std::find(full.begin(), full.end(), l1) == full.end() &&
                        std::find(full.begin(), full.end(), l2) == full.end();
            if (!open) continue;
            full.push_back(l1);
            if (l2 != l1) full.push_back(l2);
            plan.channel_of.push_back(c);
            assigned = true;
        }
        if (!assigned) throw AllocationFailed("no open channel for tuple");
    }
    return plan;
}

std::pair<PartitionInstance, EthArtifacts> build_eth_instance(const CnfFormula& f, int k) {
    if (k < 2) throw Error("build_eth_instance: k >= 2 required");
    if (f.max_width() > 3) throw Error("build_eth_instance: clauses wider than 3 literals");

    EthArtifacts art;
    art.k = k;
    art.padded = pad_formula(f, k);
    int M = art.padded.num_clauses();
    art.delta = art.padded.max_occurrences();
    art.logM = ceil_log2_at_least_one(BigNat(std::uint64_t(std::max(M, 1))));
    std::uint64_t L = 10 * art.logM;

    art.group_of.assign(std::size_t(M) + 1, 0);
    art.pos_of.assign(std::size_t(M) + 1, 0);
    for (int i = 1; i <= M; i++) {
        art.group_of[std::size_t(i)] = group_of_clause(i, M, k);
        art.pos_of[std::size_t(i)] = pos_of_clause(i, M, k);
    }

    art.channels = allocate_channels(art.padded, k);

    // layout, highest order first: I-blocks with pads, II-blocks with one
    // trailing pad, III-blocks with pads, communication channels
    std::vector<std::pair<std::string, std::uint64_t>> blocks;
    for (int l = 1; l <= k - 1; l++) {
        blocks.push_back({block_I(l), L});
        blocks.push_back({"pad" + block_I(l), L});
    }
    int positions = M > 0 ? M / (k - 1) : 0;
    for (int p = 1; p <= positions; p++) blocks.push_back({block_II(p), 1});
    blocks.push_back({"padII", L});
    for (int l1 = 1; l1 <= k - 1; l1++)
        for (int l2 = l1 + 1; l2 <= k - 1; l2++) {
            blocks.push_back({block_III(l1, l2), L});
            blocks.push_back({"pad" + block_III(l1, l2), L});
        }
    for (std::size_t c = 0; c < art.channels.num_channels; c++) blocks.push_back({block_ch(c), 3});
    art.layout = build_layout(blocks);

    // tuples indexed per clause for channel values
    std::map<int, std::vector<std::size_t>> tuples_of_clause;
    for (std::size_t t = 0; t < art.channels.tuples.size(); t++) {
        tuples_of_clause[art.channels.tuples[t].i].push_back(t);
        tuples_of_clause[art.channels.tuples[t].j].push_back(t);
    }

    // assignment items
    for (int i = 1; i <= M; i++) {
        const Clause& clause = art.padded.clauses[std::size_t(i - 1)];
        std::vector<int> cvars = clause.variables();
        std::uint32_t combos = 1u << cvars.size();
        for (std::uint32_t mask = 0; mask < combos; mask++) {
            // does this assignment of the clause's own variables satisfy it?
            bool sat = false;
            for (int lit : clause.literals) {
                int v = lit < 0 ? -lit : lit;
                std::size_t t = std::size_t(std::lower_bound(cvars.begin(), cvars.end(), v) -
                                            cvars.begin());
                bool val = (mask >> t) & 1;
                if (lit > 0 ? val : !val) sat = true;
            }
            if (!sat) continue;
            BlockWriter w(art.layout);
            w.set(block_I(art.group_of[std::size_t(i)]), BigNat(1));
            w.set(block_II(art.pos_of[std::size_t(i)]), BigNat(1));
            for (std::size_t t : tuples_of_clause[i]) {
                const auto& tup = art.channels.tuples[t];
                std::size_t v = std::size_t(std::lower_bound(cvars.begin(), cvars.end(), tup.x) -
                                            cvars.begin());
                bool val = (mask >> v) & 1;
                std::uint64_t ch_value = tup.i == i ? (val ? 1 : 0) : (val ? 0 : 1);
                w.set(block_ch(art.channels.channel_of[t]), BigNat(ch_value));
            }
            EthItem item;
            item.kind = EthItem::Kind::Assignment;
            item.i = i;
            item.alpha_mask = mask;
            item.value = assemble(w);
            art.items.push_back(item);
        }
    }

    // dummy items per external tuple
    for (std::size_t t = 0; t < art.channels.tuples.size(); t++) {
        const auto& tup = art.channels.tuples[t];
        if (!tup.external) continue;
        int l1 = art.group_of[std::size_t(tup.i)];
        int l2 = art.group_of[std::size_t(tup.j)];
        for (int prime = 0; prime < 2; prime++) {
            BlockWriter w(art.layout);
            w.set(block_III(l1, l2), BigNat(1));
            w.set(block_ch(art.channels.channel_of[t]), BigNat(prime == 0 ? 2 : 3));
            EthItem item;
            item.kind = prime == 0 ? EthItem::Kind::Dummy : EthItem::Kind::DummyPrime;
            item.i = tup.i;
            item.j = tup.j;
            item.x = tup.x;
            item.value = assemble(w);
            art.items.push_back(item);
        }
    }

    if (art.items.size() > std::size_t(7 * M + 6 * art.delta * M))
        throw InvariantViolation("eth: item count exceeds 7M + 6*Delta*M");

    // E counts for III targets
    std::map<std::pair<int, int>, std::uint64_t> E;
    for (const auto& tup : art.channels.tuples)
        if (tup.external)
            E[{art.group_of[std::size_t(tup.i)], art.group_of[std::size_t(tup.j)]}]++;

    BigNat total(0);
    for (const auto& item : art.items) total += item.value;

    BigNat first_sum(0);
    for (int l = 1; l <= k - 1; l++) {
        BlockWriter w(art.layout);
        w.set(block_I(l), BigNat(std::uint64_t(M / std::max(k - 1, 1))));
        for (int p = 1; p <= positions; p++) w.set(block_II(p), BigNat(1));
        for (int l1 = 1; l1 <= k - 1; l1++)
            for (int l2 = l1 + 1; l2 <= k - 1; l2++) {
                if (l != l1 && l != l2) continue;
                auto it = E.find({l1, l2});
                if (it != E.end() && it->second > 0) w.set(block_III(l1, l2), BigNat(it->second));
            }
        for (std::size_t t = 0; t < art.channels.tuples.size(); t++) {
            const auto& tup = art.channels.tuples[t];
            int l1 = art.group_of[std::size_t(tup.i)];
            int l2 = art.group_of[std::size_t(tup.j)];
            if (l != l1 && l != l2) continue;
            w.set(block_ch(art.channels.channel_of[t]), BigNat(tup.external ? 3 : 1));
        }
        BigNat t_l = assemble(w);
        first_sum += t_l;
        art.targets.push_back(t_l);
    }
    if (total < first_sum) throw InvariantViolation("eth: t_k would be negative");
    art.targets.push_back(total - first_sum);

    PartitionInstance inst;
    std::vector<BigNat> values;
    values.reserve(art.items.size());
    for (const auto& item : art.items) values.push_back(item.value);
    inst.items = Multiset::from_values(std::move(values));
    inst.k = k;
    inst.set_flag = false;
    inst.targets = art.targets;
    inst.validate();
    return {inst, art};
}

PartitionWitness lift_eth_assignment(const EthArtifacts& art, const Assignment& alpha) {
    if (int(alpha.size()) < art.padded.num_vars)
        throw ShapeMismatch("assignment shorter than variable count");
    if (!formula_satisfied(art.padded, alpha))
        throw NotSatisfying("assignment does not satisfy the formula");

    int M = art.padded.num_clauses();
    int k = art.k;
    // bin per item, in artifacts order
    std::vector<int> bins(art.items.size(), k);
    for (std::size_t idx = 0; idx < art.items.size(); idx++) {
        const EthItem& item = art.items[idx];
        if (item.kind == EthItem::Kind::Assignment) {
            const Clause& clause = art.padded.clauses[std::size_t(item.i - 1)];
            std::vector<int> cvars = clause.variables();
            std::uint32_t mask = 0;
            for (std::size_t t = 0; t < cvars.size(); t++)
                if (alpha[std::size_t(cvars[t]) - 1]) mask |= (1u << t);
            bins[idx] = (mask == item.alpha_mask) ? art.group_of[std::size_t(item.i)] : k;
        } else {
            bool xval = alpha[std::size_t(item.x) - 1];
            int li = art.group_of[std::size_t(item.i)];
            int lj = art.group_of[std::size_t(item.j)];
            if (item.kind == EthItem::Kind::Dummy)
                bins[idx] = xval ? lj : li;
            else
                bins[idx] = xval ? li : lj;
        }
    }
    (void)M;

    // map artifact items to occurrence slots of the sorted multiset
    std::vector<BigNat> values;
    values.reserve(art.items.size());
    for (const auto& item : art.items) values.push_back(item.value);
    Multiset ms = Multiset::from_values(values);
    auto flat = ms.flatten();
    std::map<BigNat, std::size_t> next_slot;
    for (std::size_t s = 0; s < flat.size(); s++)
        if (!next_slot.count(flat[s])) next_slot[flat[s]] = s;

    PartitionWitness w;
    w.bin_of.assign(flat.size(), 0);
    for (std::size_t idx = 0; idx < art.items.size(); idx++) {
        std::size_t slot = next_slot[art.items[idx].value]++;
        w.bin_of[slot] = bins[idx];
    }
    return w;
}

}  // namespace forge
