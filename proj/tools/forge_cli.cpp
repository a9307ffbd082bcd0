#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "forge/dimacs.hpp"
#include "forge/equivalences.hpp"
#include "forge/error.hpp"
#include "forge/gadgets.hpp"
#include "forge/harness.hpp"
#include "forge/json_io.hpp"
#include "forge/reduce_eth.hpp"
#include "forge/reduce_seth.hpp"
#include "forge/sched_reductions.hpp"
#include "forge/solvers.hpp"
#include "forge/vss.hpp"

namespace {

using namespace forge;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file(path, content);
}

std::string eth_artifacts_json(const EthArtifacts& art) {
    std::ostringstream os;
    os << "{\n  \"k\": " << art.k << ",\n  \"delta\": " << art.delta << ",\n  \"blocks\": [";
    bool first = true;
    for (const auto& b : art.layout.blocks()) {
        os << (first ? "" : ", ") << "{\"name\": \"" << b.name << "\", \"width\": " << b.width
           << ", \"offset\": " << b.offset << "}";
        first = false;
    }
    os << "],\n  \"items\": {";
    first = true;
    for (const auto& item : art.items) {
        os << (first ? "" : ", ") << "\"" << item.id() << "\": \"" << item.value.str() << "\"";
        first = false;
    }
    os << "},\n  \"targets\": [";
    for (std::size_t i = 0; i < art.targets.size(); i++)
        os << (i ? ", " : "") << "\"" << art.targets[i].str() << "\"";
    os << "]\n}\n";
    return os.str();
}

int run_solve(const std::string& input, const std::string& solver, std::uint64_t budget) {
    ProblemInstance inst = parse_instance(read_file(input));
    SolveReport report;
    if (solver == "dp") {
        if (const auto* p = std::get_if<PartitionInstance>(&inst))
            report = binpacking_dp(*p, budget);
        else if (const auto* s = std::get_if<SchedulingInstance>(&inst))
            report = sum_uj_dp(*s, budget);
        else if (const auto* v = std::get_if<VssInstance>(&inst))
            report = vss_dp(*v, budget);
        else
            report = subset_sum_dp(std::get<SubsetSumInstance>(inst), budget);
    } else if (solver == "brute") {
        if (const auto* p = std::get_if<PartitionInstance>(&inst))
            report = partition_targets_bruteforce(*p, budget);
        else if (const auto* g = std::get_if<GroupedInstance>(&inst))
            report = check_grouped_yes(*g, budget);
        else if (const auto* s = std::get_if<SchedulingInstance>(&inst))
            report = sched_bruteforce(*s, budget);
        else if (const auto* v = std::get_if<VssInstance>(&inst))
            report = vss_bruteforce(*v, budget);
        else
            report = subset_sum_bruteforce(std::get<SubsetSumInstance>(inst), budget);
    } else {
        report = solve_auto(inst, budget);
    }
    std::cout << (report.yes ? "yes" : "no") << "\n";
    std::cout << "states: " << report.states_explored << "\n";
    if (report.optimum) std::cout << "optimum: " << report.optimum->str() << "\n";
    if (report.witness) std::cout << serialize_witness(*report.witness);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduction forge: SAT -> packing/partition/scheduling instance compiler"};
    app.require_subcommand(1);

    // ---- reduce
    auto* reduce = app.add_subcommand("reduce", "run a reduction pass");
    reduce->require_subcommand(1);

    auto* eth = reduce->add_subcommand("eth", "3-SAT -> multiset k-way partition with targets");
    int eth_k = 2;
    std::string eth_in, eth_out, eth_art;
    eth->add_option("--k", eth_k, "number of bins")->required();
    eth->add_option("input", eth_in, "DIMACS CNF file")->required();
    eth->add_option("-o,--output", eth_out, "instance JSON output");
    eth->add_option("--emit-artifacts", eth_art, "layout/item registry JSON");

    auto* seth = reduce->add_subcommand("seth", "K-SAT -> weak grouped k-way partition family");
    int seth_k = 2;
    std::uint64_t seth_a = 1;
    std::string seth_mu = "1/2", seth_in, seth_dir;
    seth->add_option("--k", seth_k, "number of bins")->required();
    seth->add_option("--a", seth_a, "supervariable size");
    seth->add_option("--mu", seth_mu, "Behrend parameter P/Q");
    seth->add_option("input", seth_in, "DIMACS CNF file")->required();
    seth->add_option("-o,--outdir", seth_dir, "output directory")->required();

    auto* equiv = reduce->add_subcommand("equiv", "equivalence pass");
    std::string equiv_pass, equiv_in, equiv_out;
    equiv->add_option("--pass", equiv_pass, "pass id")->required();
    equiv->add_option("input", equiv_in)->required();
    equiv->add_option("-o,--output", equiv_out);

    auto* sched = reduce->add_subcommand("sched", "scheduling pass");
    std::string sched_pass, sched_in, sched_out;
    sched->add_option("--pass", sched_pass, "one of sumuj0, reverse-time, wjcj, pjuj, lmax-shift, normalize-r")
        ->required();
    sched->add_option("input", sched_in)->required();
    sched->add_option("-o,--output", sched_out);

    auto* chain = reduce->add_subcommand("chain", "compose passes along a route");
    std::string chain_route, chain_in, chain_out;
    chain->add_option("--route", chain_route, "comma-separated: part,bp,multipart,bounded,set")
        ->required();
    chain->add_option("input", chain_in)->required();
    chain->add_option("-o,--output", chain_out);

    auto* vss = reduce->add_subcommand("vss", "subset sum <-> vector subset sum");
    bool vss_to_ss = false, vss_from_ss = false;
    int vss_k = 2;
    std::string vss_in, vss_out;
    vss->add_flag("--to-ss", vss_to_ss, "vector subset sum -> subset sum");
    vss->add_flag("--from-ss", vss_from_ss, "subset sum -> vector subset sum family");
    vss->add_option("--k", vss_k, "dimension for --from-ss");
    vss->add_option("input", vss_in)->required();
    vss->add_option("-o,--output", vss_out);

    // ---- solve
    auto* solve = app.add_subcommand("solve", "decide an instance");
    std::string solve_in, solve_solver = "auto";
    std::uint64_t solve_budget = default_budget();
    solve->add_option("input", solve_in)->required();
    solve->add_option("--solver", solve_solver, "auto|dp|brute");
    solve->add_option("--budget", solve_budget, "state budget");

    // ---- verify
    auto* verify = app.add_subcommand("verify", "round-trip + parameter audit for a pass");
    std::string verify_pass;
    std::uint64_t verify_seed = 1, verify_count = 100;
    verify->add_option("--pass", verify_pass)->required();
    verify->add_option("--seed", verify_seed);
    verify->add_option("--count", verify_count);

    // ---- gadget
    auto* gadget = app.add_subcommand("gadget", "standalone gadget constructions");
    gadget->require_subcommand(1);
    auto* behrend = gadget->add_subcommand("behrend", "strong k-average-free set");
    std::uint64_t beh_n = 4;
    int beh_k = 2;
    std::string beh_mu = "1/2";
    behrend->add_option("--n", beh_n)->required();
    behrend->add_option("--k", beh_k)->required();
    behrend->add_option("--mu", beh_mu);
    auto* filler = gadget->add_subcommand("filler", "filler multiset");
    std::string fil_tau;
    int fil_k = 2;
    filler->add_option("--tau", fil_tau)->required();
    filler->add_option("--k", fil_k)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eth->parsed()) {
            auto parsed = parse_dimacs(read_file(eth_in));
            for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
            auto [inst, art] = build_eth_instance(parsed.formula, eth_k);
            emit(eth_out, serialize_instance(inst));
            if (!eth_art.empty()) write_file(eth_art, eth_artifacts_json(art));
            return 0;
        }
        if (seth->parsed()) {
            auto parsed = parse_dimacs(read_file(seth_in));
            for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
            CnfFormula padded = pad_variables(parsed.formula, seth_k, seth_a);
            SethParams params = SethParams::make(padded, seth_k, seth_a, Rational::parse(seth_mu));
            std::filesystem::create_directories(seth_dir);
            std::ostringstream manifest;
            manifest << "{\n  \"members\": [\n";
            auto stream = gamma_tuples(params);
            std::size_t idx = 0;
            bool first = true;
            while (auto g = stream.next()) {
                GroupedInstance inst = build_seth_instance(params, *g);
                std::string name = "gamma_" + std::to_string(idx) + ".json";
                write_file(seth_dir + "/" + name, serialize_instance(inst));
                manifest << (first ? "" : ",\n") << "    {\"file\": \"" << name << "\", \"gamma\": [";
                for (std::size_t i = 0; i < g->gamma.size(); i++)
                    manifest << (i ? ", " : "") << g->gamma[i];
                manifest << "]}";
                first = false;
                idx++;
            }
            manifest << "\n  ]\n}\n";
            write_file(seth_dir + "/manifest.json", manifest.str());
            return 0;
        }
        if (equiv->parsed() || sched->parsed()) {
            std::string pass = equiv->parsed() ? equiv_pass : sched_pass;
            std::string in = equiv->parsed() ? equiv_in : sched_in;
            std::string outp = equiv->parsed() ? equiv_out : sched_out;
            const auto& registry = pass_registry();
            auto it = registry.find(pass);
            if (it == registry.end() || it->second.kind != PassKind::Instance) {
                std::cerr << "unknown pass: " << pass << "\n";
                return 2;
            }
            ProblemInstance inst = parse_instance(read_file(in));
            ReductionOutput out = it->second.apply(inst);
            emit(outp, serialize_reduction_output(out));
            return 0;
        }
        if (chain->parsed()) {
            ProblemInstance inst = parse_instance(read_file(chain_in));
            std::map<std::string, std::string> route_map = {
                {"part", ""},  // starting tag, no-op
                {"bp", "partition_to_binpacking"},
                {"multipart", "binpacking_to_partition"},
                {"bounded", "multiset_to_bounded"},
                {"set", "bounded_multiset_to_set"},
                {"targets2plain", "targets_to_plain_multiset"}};
            std::ostringstream steps;
            std::string token;
            std::istringstream route(chain_route);
            const auto& registry = pass_registry();
            while (std::getline(route, token, ',')) {
                auto rm = route_map.find(token);
                if (rm == route_map.end()) {
                    std::cerr << "unknown route token: " << token << "\n";
                    return 2;
                }
                if (rm->second.empty()) continue;
                ReductionOutput out = registry.at(rm->second).apply(inst);
                if (out.is_decided()) {
                    std::cout << "decided at " << token << ": " << (out.decided->yes ? "yes" : "no")
                              << " (" << out.decided->reason << ")\n";
                    return 0;
                }
                inst = *out.instance;
            }
            emit(chain_out, serialize_instance(inst));
            return 0;
        }
        if (vss->parsed()) {
            if (vss_to_ss == vss_from_ss) {
                std::cerr << "choose exactly one of --to-ss / --from-ss\n";
                return 2;
            }
            ProblemInstance inst = parse_instance(read_file(vss_in));
            if (vss_to_ss) {
                const auto* v = std::get_if<VssInstance>(&inst);
                if (!v) {
                    std::cerr << "--to-ss expects a vector_subset_sum instance\n";
                    return 2;
                }
                auto out = vss_to_subset_sum(*v);
                emit(vss_out, serialize_instance(ProblemInstance(out.instance)));
            } else {
                const auto* ss = std::get_if<SubsetSumInstance>(&inst);
                if (!ss) {
                    std::cerr << "--from-ss expects a subset_sum instance\n";
                    return 2;
                }
                auto fam = subset_sum_to_vss(ss->items, ss->target, vss_k);
                std::ostringstream os;
                for (const auto& m : fam.members)
                    os << serialize_instance(ProblemInstance(m.instance));
                emit(vss_out, os.str());
            }
            return 0;
        }
        if (solve->parsed()) return run_solve(solve_in, solve_solver, solve_budget);
        if (verify->parsed()) {
            CorpusSpec corpus{"", verify_seed, verify_count};
            RoundtripReport rt = roundtrip_check(verify_pass, corpus);
            bool audit_ok = true;
            std::string audit_note = "n/a";
            const auto& info = pass_registry().at(verify_pass);
            if (info.kind == PassKind::Instance) {
                AuditReport audit = param_audit(verify_pass, corpus);
                audit_ok = audit.ok();
                audit_note = "checked " + std::to_string(audit.checked) + ", max size ratio " +
                             audit.max_size_ratio;
            }
            std::cout << "{\n  \"pass\": \"" << verify_pass << "\",\n  \"checked\": " << rt.checked
                      << ",\n  \"matched\": " << rt.matched << ",\n  \"decided\": " << rt.decided
                      << ",\n  \"skipped\": " << rt.skipped << ",\n  \"audit\": \"" << audit_note
                      << "\",\n  \"ok\": " << ((rt.ok() && audit_ok) ? "true" : "false") << "\n}\n";
            return (rt.ok() && audit_ok) ? 0 : 1;
        }
        if (behrend->parsed()) {
            AvgFreeSet set = behrend_set(beh_n, beh_k, Rational::parse(beh_mu));
            std::cout << "[";
            for (std::size_t i = 0; i < set.elements.size(); i++)
                std::cout << (i ? ", " : "") << "\"" << set.elements[i].str() << "\"";
            std::cout << "]\n";
            return 0;
        }
        if (filler->parsed()) {
            FillerMultiset f = filler_multiset(BigNat::from_string(fil_tau), fil_k);
            auto flat = f.P.flatten();
            std::cout << "[";
            for (std::size_t i = 0; i < flat.size(); i++)
                std::cout << (i ? ", " : "") << "\"" << flat[i].str() << "\"";
            std::cout << "]\n";
            return 0;
        }
    } catch (const SchemaViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
