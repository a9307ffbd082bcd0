#include "forge/json_io.hpp"

#include <json.hpp>

#include "forge/error.hpp"

namespace forge {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

BigNat parse_bignat(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaViolation(path, "expected a decimal string");
    try {
        return BigNat::from_string(j.get<std::string>());
    } catch (const Error& e) {
        throw SchemaViolation(path, e.what());
    }
}

SignedBig parse_signed(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaViolation(path, "expected a decimal string");
    std::string s = j.get<std::string>();
    SignedBig out;
    if (!s.empty() && s[0] == '-') {
        out.negative = true;
        s = s.substr(1);
    }
    try {
        out.magnitude = BigNat::from_string(s);
    } catch (const Error& e) {
        throw SchemaViolation(path, e.what());
    }
    return out;
}

Rational parse_rational(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaViolation(path, "expected a rational string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
        throw SchemaViolation(path, e.what());
    }
}

Json multiset_to_json(const Multiset& m) {
    Json arr = Json::array();
    for (const auto& v : m.flatten()) arr.push_back(v.str());
    return arr;
}

Multiset multiset_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaViolation(path, "expected an array");
    std::vector<BigNat> vals;
    for (std::size_t i = 0; i < j.size(); i++)
        vals.push_back(parse_bignat(j[i], path + "[" + std::to_string(i) + "]"));
    return Multiset::from_values(std::move(vals));
}

const Json& field(const Json& j, const std::string& name, const std::string& path) {
    auto it = j.find(name);
    if (it == j.end()) throw SchemaViolation(path + "." + name, "missing field");
    return *it;
}

int parse_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaViolation(path, "expected an integer");
    return j.get<int>();
}

}  // namespace

std::string serialize_instance(const ProblemInstance& inst) {
    Json j;
    j["kind"] = kind_of(inst);
    if (const auto* p = std::get_if<PartitionInstance>(&inst)) {
        j["k"] = p->k;
        j["items"] = multiset_to_json(p->items);
        if (p->targets) {
            Json t = Json::array();
            for (const auto& x : *p->targets) t.push_back(x.str());
            j["targets"] = t;
        }
        if (p->capacity) j["capacity"] = p->capacity->str();
        if (p->bounded_W) j["W"] = p->bounded_W->str();
        return dump(j);
    }
    if (const auto* g = std::get_if<GroupedInstance>(&inst)) {
        j["k"] = g->k;
        j["s"] = std::int64_t(g->s);
        Json groups = Json::array();
        for (const auto& grp : g->groups) groups.push_back(multiset_to_json(grp));
        j["groups"] = groups;
        if (g->targets) {
            Json t = Json::array();
            for (const auto& x : *g->targets) t.push_back(x.str());
            j["targets"] = t;
        }
        j["W"] = g->W.str();
        return dump(j);
    }
    if (const auto* s = std::get_if<SchedulingInstance>(&inst)) {
        j["k"] = s->machines.k;
        if (s->machines.uniform()) {
            Json speeds = Json::array();
            for (const auto& sp : s->machines.speeds) speeds.push_back(sp.str());
            j["speeds"] = speeds;
        }
        Json jobs = Json::array();
        for (const auto& job : s->jobs) {
            Json jj;
            jj["p"] = job.p.str();
            if (job.r) jj["r"] = job.r->str();
            if (job.d) jj["d"] = job.d->str();
            if (job.w) jj["w"] = job.w->str();
            jobs.push_back(jj);
        }
        j["jobs"] = jobs;
        j["objective"] = objective_name(s->objective);
        j["lambda"] = s->lambda.str();
        return dump(j);
    }
    if (const auto* v = std::get_if<VssInstance>(&inst)) {
        j["k"] = v->k;
        Json vecs = Json::array();
        for (const auto& vec : v->vectors) {
            Json row = Json::array();
            for (const auto& c : vec) row.push_back(c.str());
            vecs.push_back(row);
        }
        j["vectors"] = vecs;
        Json t = Json::array();
        for (const auto& c : v->target) t.push_back(c.str());
        j["target"] = t;
        return dump(j);
    }
    const auto& ss = std::get<SubsetSumInstance>(inst);
    Json items = Json::array();
    for (const auto& x : ss.items) items.push_back(x.str());
    j["items"] = items;
    j["target"] = ss.target.str();
    return dump(j);
}

ProblemInstance parse_instance(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaViolation("$", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaViolation("$", "expected an object");
    std::string kind = field(j, "kind", "$").is_string() ? j["kind"].get<std::string>() : "";
    if (kind.empty()) throw SchemaViolation("$.kind", "expected a string");

    bool multiset = kind.rfind("multiset_", 0) == 0;
    std::string base = multiset ? kind.substr(9) : kind;

    if (base == "bin_packing" || base == "partition" || base == "partition_targets" ||
        base == "partition_bounded") {
        PartitionInstance p;
        p.k = parse_int(field(j, "k", "$"), "$.k");
        p.set_flag = !multiset;
        p.items = multiset_from_json(field(j, "items", "$"), "$.items");
        if (base == "partition_targets") {
            const Json& t = field(j, "targets", "$");
            if (!t.is_array()) throw SchemaViolation("$.targets", "expected an array");
            std::vector<BigNat> targets;
            for (std::size_t i = 0; i < t.size(); i++)
                targets.push_back(parse_bignat(t[i], "$.targets[" + std::to_string(i) + "]"));
            p.targets = targets;
        }
        if (base == "bin_packing") p.capacity = parse_bignat(field(j, "capacity", "$"), "$.capacity");
        if (base == "partition_bounded") p.bounded_W = parse_bignat(field(j, "W", "$"), "$.W");
        try {
            p.validate();
        } catch (const Error& e) {
            throw SchemaViolation("$", e.what());
        }
        return p;
    }
    if (base == "grouped_partition" || base == "grouped_partition_targets" ||
        base == "weak_grouped_partition" || base == "weak_grouped_partition_targets") {
        GroupedInstance g;
        g.k = parse_int(field(j, "k", "$"), "$.k");
        const Json& s = field(j, "s", "$");
        if (!s.is_number_integer()) throw SchemaViolation("$.s", "expected an integer");
        g.s = s.get<std::uint64_t>();
        g.set_flag = !multiset;
        g.weak_flag = base.rfind("weak_", 0) == 0;
        const Json& groups = field(j, "groups", "$");
        if (!groups.is_array()) throw SchemaViolation("$.groups", "expected an array");
        for (std::size_t i = 0; i < groups.size(); i++)
            g.groups.push_back(multiset_from_json(groups[i], "$.groups[" + std::to_string(i) + "]"));
        if (base.find("targets") != std::string::npos) {
            const Json& t = field(j, "targets", "$");
            if (!t.is_array()) throw SchemaViolation("$.targets", "expected an array");
            std::vector<BigNat> targets;
            for (std::size_t i = 0; i < t.size(); i++)
                targets.push_back(parse_bignat(t[i], "$.targets[" + std::to_string(i) + "]"));
            g.targets = targets;
        }
        g.W = parse_bignat(field(j, "W", "$"), "$.W");
        try {
            g.validate();
        } catch (const Error& e) {
            throw SchemaViolation("$", e.what());
        }
        return g;
    }
    if (base.rfind("scheduling_", 0) == 0) {
        SchedulingInstance s;
        s.machines.k = parse_int(field(j, "k", "$"), "$.k");
        if (j.contains("speeds")) {
            const Json& speeds = j["speeds"];
            if (!speeds.is_array()) throw SchemaViolation("$.speeds", "expected an array");
            for (std::size_t i = 0; i < speeds.size(); i++)
                s.machines.speeds.push_back(
                    parse_rational(speeds[i], "$.speeds[" + std::to_string(i) + "]"));
        }
        std::string env = s.machines.uniform() ? "Q" : "P";
        std::string expect = "scheduling_" + env + "_";
        if (base.rfind(expect, 0) != 0) throw SchemaViolation("$.kind", "environment/speeds mismatch");
        try {
            s.objective = objective_from_name(base.substr(expect.size()));
        } catch (const Error& e) {
            throw SchemaViolation("$.kind", e.what());
        }
        const Json& jobs = field(j, "jobs", "$");
        if (!jobs.is_array()) throw SchemaViolation("$.jobs", "expected an array");
        for (std::size_t i = 0; i < jobs.size(); i++) {
            std::string path = "$.jobs[" + std::to_string(i) + "]";
            const Json& jj = jobs[i];
            if (!jj.is_object()) throw SchemaViolation(path, "expected an object");
            Job job;
            job.p = parse_bignat(field(jj, "p", path), path + ".p");
            if (jj.contains("r")) job.r = parse_bignat(jj["r"], path + ".r");
            if (jj.contains("d")) job.d = parse_bignat(jj["d"], path + ".d");
            if (jj.contains("w")) job.w = parse_bignat(jj["w"], path + ".w");
            s.jobs.push_back(job);
        }
        s.lambda = parse_signed(field(j, "lambda", "$"), "$.lambda");
        try {
            s.validate();
        } catch (const Error& e) {
            throw SchemaViolation("$", e.what());
        }
        return s;
    }
    if (base == "vector_subset_sum") {
        VssInstance v;
        v.k = parse_int(field(j, "k", "$"), "$.k");
        const Json& vecs = field(j, "vectors", "$");
        if (!vecs.is_array()) throw SchemaViolation("$.vectors", "expected an array");
        for (std::size_t i = 0; i < vecs.size(); i++) {
            const Json& row = vecs[i];
            std::string path = "$.vectors[" + std::to_string(i) + "]";
            if (!row.is_array()) throw SchemaViolation(path, "expected an array");
            std::vector<BigNat> vec;
            for (std::size_t c = 0; c < row.size(); c++)
                vec.push_back(parse_bignat(row[c], path + "[" + std::to_string(c) + "]"));
            v.vectors.push_back(vec);
        }
        const Json& t = field(j, "target", "$");
        if (!t.is_array()) throw SchemaViolation("$.target", "expected an array");
        for (std::size_t c = 0; c < t.size(); c++)
            v.target.push_back(parse_bignat(t[c], "$.target[" + std::to_string(c) + "]"));
        try {
            v.validate();
        } catch (const Error& e) {
            throw SchemaViolation("$", e.what());
        }
        return v;
    }
    if (base == "subset_sum") {
        SubsetSumInstance ss;
        const Json& items = field(j, "items", "$");
        if (!items.is_array()) throw SchemaViolation("$.items", "expected an array");
        for (std::size_t i = 0; i < items.size(); i++)
            ss.items.push_back(parse_bignat(items[i], "$.items[" + std::to_string(i) + "]"));
        ss.target = parse_bignat(field(j, "target", "$"), "$.target");
        return ss;
    }
    throw SchemaViolation("$.kind", "unknown kind: " + kind);
}

std::string serialize_witness(const Witness& w) {
    Json j;
    if (const auto* p = std::get_if<PartitionWitness>(&w)) {
        j["type"] = "partition";
        j["bins"] = p->bin_of;
        return dump(j);
    }
    if (const auto* s = std::get_if<ScheduleWitness>(&w)) {
        j["type"] = "schedule";
        Json pl = Json::array();
        for (const auto& p : s->placements) {
            Json e;
            e["machine"] = p.machine;
            e["start"] = p.start.str();
            pl.push_back(e);
        }
        j["placements"] = pl;
        return dump(j);
    }
    const auto& b = std::get<SubsetWitness>(w);
    j["type"] = "subset";
    Json take = Json::array();
    for (bool t : b.take) take.push_back(t ? 1 : 0);
    j["take"] = take;
    return dump(j);
}

Witness parse_witness(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaViolation("$", std::string("invalid JSON: ") + e.what());
    }
    std::string type = field(j, "type", "$").get<std::string>();
    if (type == "partition") {
        PartitionWitness w;
        for (const auto& b : field(j, "bins", "$")) w.bin_of.push_back(b.get<int>());
        return w;
    }
    if (type == "schedule") {
        ScheduleWitness w;
        for (const auto& p : field(j, "placements", "$"))
            w.placements.push_back({p.at("machine").get<int>(),
                                    parse_bignat(p.at("start"), "$.placements[].start")});
        return w;
    }
    if (type == "subset") {
        SubsetWitness w;
        for (const auto& t : field(j, "take", "$")) w.take.push_back(t.get<int>() != 0);
        return w;
    }
    throw SchemaViolation("$.type", "unknown witness type: " + type);
}

std::string serialize_reduction_output(const ReductionOutput& out) {
    Json j;
    if (out.is_decided()) {
        Json d;
        d["verdict"] = out.decided->yes ? "yes" : "no";
        d["reason"] = out.decided->reason;
        j["decided"] = d;
    } else {
        j["instance"] = Json::parse(serialize_instance(*out.instance));
    }
    Json m;
    m["lemma"] = out.meta.lemma_tag;
    m["c1"] = std::int64_t(out.meta.c1);
    m["c2"] = std::int64_t(out.meta.c2);
    m["n_in"] = std::int64_t(out.meta.n_in);
    m["n_out"] = std::int64_t(out.meta.n_out);
    m["T_in"] = out.meta.T_in.str();
    m["T_out"] = out.meta.T_out.str();
    m["param_preserving"] = out.meta.param_preserving;
    j["meta"] = m;
    return dump(j);
}

}  // namespace forge
