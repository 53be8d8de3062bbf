// scl-forge: certified bounds for (stable) mixed commutator lengths in free
// groups with marked normal subgroups.

#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sclforge/harness.hpp"
#include "sclforge/json_io.hpp"

using namespace sclforge;

namespace {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

Marking load_marking(const std::string& pair_path) {
    if (pair_path.empty()) return Marking::ordinary(2);
    return marking_from_json(read_json_file(pair_path));
}

void emit(const Json& j, const std::string& json_out) {
    std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw Error("cannot write file: " + json_out);
        out << text;
    }
}

unsigned resolve_threads(int threads) {
    if (threads > 0) return static_cast<unsigned>(threads);
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : std::min(hw, 8u);
}

std::vector<std::size_t> parse_point_list(const MetricSample& sample, const std::string& csv) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string tok = csv.substr(start, comma == std::string::npos ? std::string::npos
                                                                       : comma - start);
        if (!tok.empty()) out.push_back(sample.index_of(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int suite_exit(const SuiteReport& rep) { return rep.all_pass() ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified bounds for stable mixed commutator lengths on free groups"};
    app.set_help_flag("--help", "print help");  // frees -h for the subcommand flag --h
    app.require_subcommand(1);

    std::string pair_path, json_out;
    int threads = 0;
    app.add_option("--pair", pair_path, "marking JSON file (default: ordinary rank-2 pair)");
    app.add_option("--json-out", json_out, "also write the JSON result to this path");
    app.add_option("--threads", threads, "worker threads (0 = auto)");

    // cl-upper
    auto* cl_cmd = app.add_subcommand("cl-upper", "search a commutator-length upper bound");
    std::string word_str, mode_str = "ordinary";
    SearchBudget search_budget;
    cl_cmd->add_option("--word", word_str, "target word, e.g. \"[a,b]^3\"")->required();
    cl_cmd->add_option("--mode", mode_str, "ordinary | mixed")
        ->check(CLI::IsMember({"ordinary", "mixed"}));
    cl_cmd->add_option("--max-terms", search_budget.max_terms, "maximum commutator count");
    cl_cmd->add_option("--gen-len", search_budget.gen_len, "maximum piece length");
    cl_cmd->add_option("--node-budget", search_budget.node_budget, "search node budget");

    // chain-norm
    auto* norm_cmd = app.add_subcommand("chain-norm", "truncated filling norm of a chain");
    std::string chain_path;
    int length_budget = 4;
    bool allow_h = false;
    norm_cmd->add_option("--chain", chain_path, "chain JSON file")->required();
    norm_cmd->add_option("--L", length_budget, "cell length budget");
    norm_cmd->add_flag("--h", allow_h, "minimize modulo the bounded h-dictionary");

    // scl
    auto* scl_cmd = app.add_subcommand("scl", "certified scl interval for a word");
    std::string scl_word, scl_mode = "mixed", certs_path;
    BoundsBudget bounds_budget;
    scl_cmd->add_option("--word", scl_word, "target word")->required();
    scl_cmd->add_option("--mode", scl_mode, "ordinary | mixed | both")
        ->check(CLI::IsMember({"ordinary", "mixed", "both"}));
    scl_cmd->add_option("--kmax", bounds_budget.k_max, "stabilization powers");
    scl_cmd->add_option("--L", bounds_budget.length_budget, "filling-norm length budget");
    scl_cmd->add_option("--gen-len", bounds_budget.search.gen_len, "search piece length");
    scl_cmd->add_option("--max-terms", bounds_budget.search.max_terms, "search term budget");
    scl_cmd->add_option("--certificates", certs_path,
                        "quasimorphism certificate JSON file replacing the default set");

    // coarse
    auto* coarse_cmd = app.add_subcommand("coarse", "directed radii on a finite metric sample");
    std::string sample_path, set_a, set_b;
    coarse_cmd->add_option("--sample", sample_path, "metric sample JSON file")->required();
    coarse_cmd->add_option("--A", set_a, "comma-separated point labels")->required();
    coarse_cmd->add_option("--B", set_b, "comma-separated point labels")->required();

    // suites
    auto* iota_cmd = app.add_subcommand("iotakernel", "doubling-example verification suite");
    int n_max = 8;
    iota_cmd->add_option("--n", n_max, "largest exponent level");

    auto* props_cmd = app.add_subcommand("properties", "randomized property suite");
    std::uint64_t seed = 42;
    props_cmd->add_option("--seed", seed, "suite seed");

    auto* paper_cmd = app.add_subcommand("paper-checks", "all finitely checkable statements");
    std::uint64_t paper_seed = 42;
    int paper_n = 8;
    paper_cmd->add_option("--seed", paper_seed, "suite seed");
    paper_cmd->add_option("--n", paper_n, "largest doubling level");

    for (CLI::App* sub : {cl_cmd, norm_cmd, scl_cmd, coarse_cmd, iota_cmd, props_cmd, paper_cmd})
        sub->fallthrough();  // global flags may follow the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Marking marking = load_marking(pair_path);
        unsigned nthreads = resolve_threads(threads);

        if (cl_cmd->parsed()) {
            Word y = marking.parse(word_str);
            Mode mode = mode_str == "mixed" ? Mode::mixed : Mode::ordinary;
            Json j;
            j["schema"] = kSchemaTag;
            j["command"] = "cl-upper";
            j["marking"] = marking_to_json(marking);
            j["word"] = marking.format(y);
            j["mode"] = mode_str;
            try {
                auto cert = cl_upper_search(marking, y, mode, search_budget);
                if (cert) {
                    j["result"] = "found";
                    j["certificate"] = cl_certificate_to_json(marking, *cert);
                    j["verified"] = verify_cl_certificate(marking, *cert);
                    emit(j, json_out);
                    return 0;
                }
                j["result"] = "not_found";
                emit(j, json_out);
                return 1;
            } catch (const NotInSubgroupError& e) {
                j["result"] = "not_in_subgroup";
                j["error"] = e.what();
                emit(j, json_out);
                return 1;
            }
        }

        if (norm_cmd->parsed()) {
            Chain1 chain = chain1_from_json(marking, read_json_file(chain_path));
            FillingNormOptions opt;
            opt.length_budget = length_budget;
            opt.allow_h = allow_h;
            Json j;
            j["schema"] = kSchemaTag;
            j["command"] = "chain-norm";
            j["marking"] = marking_to_json(marking);
            j["chain"] = chain1_to_json(marking, chain);
            j["L"] = length_budget;
            j["allow_h"] = allow_h;
            auto res = truncated_filling_norm(marking, chain, opt);
            if (res.status == LpStatus::infeasible) {
                j["result"] = "infeasible";
                emit(j, json_out);
                return 3;
            }
            j["result"] = "solved";
            j["certificate"] = filling_certificate_to_json(marking, *res.certificate);
            j["verified"] = verify_filling_certificate(marking, *res.certificate);
            j["lp"] = Json{{"rows", res.stats.rows},
                           {"cols", res.stats.cols},
                           {"pivots", res.stats.pivots},
                           {"primal", rational_str(res.stats.primal_value)},
                           {"dual", rational_str(res.stats.dual_value)}};
            emit(j, json_out);
            return 0;
        }

        if (scl_cmd->parsed()) {
            Word y = marking.parse(scl_word);
            std::vector<BrooksCombination> certs;
            if (certs_path.empty()) {
                certs = default_certificate_set(marking.rank());
            } else {
                Json cj = read_json_file(certs_path);
                if (cj.is_object() && cj.contains("atoms")) {
                    certs.push_back(brooks_from_json(marking, cj));
                } else {
                    const Json& arr = cj.is_array() ? cj : cj.at("certificates");
                    for (const auto& item : arr) certs.push_back(brooks_from_json(marking, item));
                }
            }
            defect_window_check_all(certs, marking.rank(), nthreads);
            Json j;
            j["schema"] = kSchemaTag;
            j["command"] = "scl";
            j["marking"] = marking_to_json(marking);
            j["word"] = marking.format(y);
            try {
                if (scl_mode == "both") {
                    auto cmp = compare_modes(marking, y, bounds_budget, certs);
                    j["ordinary"] = interval_to_json(marking, cmp.ordinary);
                    j["mixed"] = interval_to_json(marking, cmp.mixed);
                    j["checks"] =
                        Json{{"lower_ordinary_le_upper_mixed", cmp.lower_ordinary_le_upper_mixed},
                             {"intervals_intersect", cmp.intervals_intersect},
                             {"amenable_doubling_consistent", cmp.amenable_doubling_consistent}};
                } else {
                    Mode mode = scl_mode == "mixed" ? Mode::mixed : Mode::ordinary;
                    auto iv = scl_interval(marking, y, mode, bounds_budget, certs);
                    j["interval"] = interval_to_json(marking, iv);
                }
                emit(j, json_out);
                return 0;
            } catch (const NotInSubgroupError& e) {
                j["result"] = "not_in_subgroup";
                j["error"] = e.what();
                emit(j, json_out);
                return 1;
            }
        }

        if (coarse_cmd->parsed()) {
            MetricSample sample = metric_sample_from_json(read_json_file(sample_path));
            auto A = parse_point_list(sample, set_a);
            auto B = parse_point_list(sample, set_b);
            auto [rab, rba] = asymptotic_check(sample, A, B);
            Json j;
            j["schema"] = kSchemaTag;
            j["command"] = "coarse";
            j["A"] = set_a;
            j["B"] = set_b;
            j["directed_radius_A_into_B"] = ext_to_json(rab);
            j["directed_radius_B_into_A"] = ext_to_json(rba);
            j["asymptotic_within_sample"] = !rab.infinite && !rba.infinite;
            j["scope"] = "within-sample";
            emit(j, json_out);
            return 0;
        }

        SuiteConfig cfg;
        cfg.threads = nthreads;
        if (iota_cmd->parsed()) {
            SuiteReport rep = run_iotakernel(n_max);
            emit(rep.to_json(), json_out);
            return suite_exit(rep);
        }
        if (props_cmd->parsed()) {
            cfg.seed = seed;
            SuiteReport rep = run_property_suite(cfg);
            emit(rep.to_json(), json_out);
            return suite_exit(rep);
        }
        if (paper_cmd->parsed()) {
            cfg.seed = paper_seed;
            SuiteReport rep = run_paper_checks(cfg, paper_n);
            emit(rep.to_json(), json_out);
            return suite_exit(rep);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
