#pragma once

#include "boollat/acceptance.hpp"
#include "boollat/codes.hpp"
#include "boollat/constructions.hpp"
#include "boollat/containers.hpp"
#include "boollat/enumerate.hpp"
#include "boollat/family.hpp"
#include "boollat/graphs.hpp"
#include "boollat/katona.hpp"
#include "boollat/numeric.hpp"
#include "boollat/report.hpp"
#include "boollat/supersat.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace boollat {

namespace cli_detail {

inline std::vector<bool> parse_choice_bits(const std::string& s) {
    std::vector<bool> out;
    out.reserve(s.size());
    for (char ch : s) {
        if (ch != '0' && ch != '1')
            throw std::invalid_argument("choices must be a string of 0s and 1s");
        out.push_back(ch == '1');
    }
    return out;
}

inline Json witness_labels(const ImplicitGraph& g, const std::vector<std::size_t>& vs) {
    Json out = Json::array();
    for (std::size_t v : vs) out.push_back(g.vertex_name(v));
    return out;
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open family file '" + path + "'");
    return in;
}

}  // namespace cli_detail

// Parses and executes one command; writes the report (JSON or CSV) to `out`
// or to the --out path. Returns 0 on success, 2 when a verification-style
// command found a violation, 1 on usage, format, or budget errors.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact desk-scale experiments on independent sets in Boolean-lattice graphs"};
    app.name("boollat");
    app.require_subcommand(1);

    std::string format = "json";
    std::string out_path;
    unsigned threads = 1;
    bool timing = false;
    std::uint64_t budget_nodes = EnumBudget{}.max_nodes;
    double timeout_seconds = EnumBudget{}.timeout_seconds;
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "write the report to this file instead of stdout");
    app.add_option("--threads", threads, "worker count; never changes output bytes")
        ->check(CLI::PositiveNumber);
    app.add_flag("--timing", timing, "append wall-clock seconds to the report");
    app.add_option("--budget-nodes", budget_nodes, "enumeration node budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--timeout", timeout_seconds, "per-operation time budget in seconds")
        ->check(CLI::PositiveNumber);

    auto* cmd_count = app.add_subcommand("count", "count or extract independent sets");
    cmd_count->fallthrough();
    std::string count_graph;
    std::string count_mode = "independent";
    cmd_count->add_option("--graph", count_graph, "graph spec, e.g. comparability:n=3")->required();
    cmd_count->add_option("--mode", count_mode, "independent | max | maximal")
        ->check(CLI::IsMember({"independent", "max", "maximal"}));

    auto* cmd_containers = app.add_subcommand("containers", "run the container algorithm");
    cmd_containers->fallthrough();
    std::string cont_graph, cont_delta, cont_switch;
    std::uint64_t cont_max_s = 0;
    bool cont_verify = false;
    cmd_containers->add_option("--graph", cont_graph, "graph spec")->required();
    cmd_containers->add_option("--delta", cont_delta, "per-stage degree thresholds, e.g. 4,2")
        ->required();
    cmd_containers->add_option("--switch", cont_switch,
                               "stage switch sizes, one fewer than --delta entries");
    auto* opt_max_s = cmd_containers->add_option(
        "--max-s", cont_max_s, "largest fingerprint size to replay (default: bound + stages)");
    cmd_containers->add_flag("--verify", cont_verify,
                             "check every independent set against its container");

    auto* cmd_supersat = app.add_subcommand("supersat", "verify a supersaturation bound");
    cmd_supersat->fallthrough();
    std::string ss_lemma, ss_mode = "exhaustive", ss_R;
    int ss_n = 0, ss_t = 0, ss_p = 1, ss_q = 2, ss_k = 0;
    std::uint64_t ss_x = 0, ss_trials = 32, ss_seed = 0;
    cmd_supersat
        ->add_option("--lemma", ss_lemma,
                     "kleitman | hamming | tilt | transport | mono | claim-cd | prop64")
        ->required()
        ->check(CLI::IsMember(
            {"kleitman", "hamming", "tilt", "transport", "mono", "claim-cd", "prop64"}));
    cmd_supersat->add_option("--n", ss_n, "ground set size")->required();
    cmd_supersat->add_option("--x", ss_x, "excess over the extremal bound (claim-cd: family size)")
        ->required();
    auto* opt_ss_t = cmd_supersat->add_option("--t", ss_t, "distance/intersection parameter");
    cmd_supersat->add_option("--p", ss_p, "tilt numerator");
    cmd_supersat->add_option("--q", ss_q, "tilt denominator");
    auto* opt_ss_k = cmd_supersat->add_option("--k", ss_k, "pair size for transport");
    auto* opt_ss_R = cmd_supersat->add_option("--R", ss_R, "colour class as a hex mask");
    cmd_supersat->add_option("--mode", ss_mode, "exhaustive | random")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    cmd_supersat->add_option("--trials", ss_trials, "random-mode restarts");
    cmd_supersat->add_option("--seed", ss_seed, "random-mode seed");

    auto* cmd_bounds = app.add_subcommand("bounds", "evaluate an extremal bound exactly");
    cmd_bounds->fallthrough();
    std::string bd_family;
    int bd_n = 0, bd_t = 0, bd_k = 0, bd_d = 0;
    cmd_bounds->add_option("--family", bd_family, "hamming | transport | katona")
        ->required()
        ->check(CLI::IsMember({"hamming", "transport", "katona"}));
    cmd_bounds->add_option("--n", bd_n, "ground set size")->required();
    auto* opt_bd_t = cmd_bounds->add_option("--t", bd_t, "error radius / intersection size");
    auto* opt_bd_k = cmd_bounds->add_option("--k", bd_k, "pair size");
    auto* opt_bd_d = cmd_bounds->add_option("--d", bd_d, "minimum distance");

    auto* cmd_katona = app.add_subcommand("random-katona", "Monte Carlo maxima in random sublattices");
    cmd_katona->fallthrough();
    int rk_n = 0, rk_t = 0;
    std::string rk_p;
    std::uint64_t rk_trials = 16, rk_seed = 0;
    cmd_katona->add_option("--n", rk_n, "ground set size")->required();
    cmd_katona->add_option("--t", rk_t, "intersection size")->required();
    cmd_katona->add_option("--p", rk_p, "retention probability as NUM/DEN")->required();
    cmd_katona->add_option("--trials", rk_trials, "number of sampled sublattices");
    cmd_katona->add_option("--seed", rk_seed, "base seed");

    auto* cmd_construct = app.add_subcommand("construct", "emit or check explicit families");
    cmd_construct->fallthrough();
    std::string cs_what, cs_B, cs_choices, cs_file, cs_family_out;
    int cs_n = 0, cs_k = 0, cs_r = 0, cs_s = 0, cs_i = 1, cs_a = 0, cs_b = 0;
    bool cs_emit = false;
    cmd_construct
        ->add_option("--what", cs_what,
                     "good-triples | fT | matching | c78 | isp-check | skew-check")
        ->required()
        ->check(CLI::IsMember({"good-triples", "fT", "matching", "c78", "isp-check", "skew-check"}));
    auto* opt_cs_n = cmd_construct->add_option("--n", cs_n, "ground set size");
    auto* opt_cs_k = cmd_construct->add_option("--k", cs_k, "layer size");
    auto* opt_cs_B = cmd_construct->add_option("--B", cs_B, "triple base set as a hex mask");
    auto* opt_cs_r = cmd_construct->add_option("--r", cs_r, "triple element r");
    auto* opt_cs_s = cmd_construct->add_option("--s", cs_s, "triple element s");
    cmd_construct->add_option("--choices", cs_choices, "bits for the free matching edges");
    cmd_construct->add_option("--i", cs_i, "matching element");
    cmd_construct->add_flag("--emit", cs_emit, "include the generated objects in the report");
    auto* opt_cs_file = cmd_construct->add_option("--file", cs_file, "set-pair family file to check");
    auto* opt_cs_a = cmd_construct->add_option("--a", cs_a, "first-set size cap");
    auto* opt_cs_b = cmd_construct->add_option("--b", cs_b, "second-set size cap");
    cmd_construct->add_option("--family-out", cs_family_out,
                              "also write the constructed family to this file");

    auto* cmd_verify = app.add_subcommand("verify-all", "run the full verification suite");
    cmd_verify->fallthrough();
    std::string verify_level = "desk";
    cmd_verify->add_option("--level", verify_level, "verification depth")
        ->check(CLI::IsMember({"desk"}));

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << "\n";
        return 1;
    }

    EnumBudget budget;
    budget.max_nodes = budget_nodes;
    budget.timeout_seconds = timeout_seconds;
    Json budget_echo{{"budget_nodes", budget_nodes}, {"timeout_seconds", timeout_seconds}};

    Json rep;
    int code = 0;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (cmd_count->parsed()) {
            ImplicitGraph g = parse_graph_spec(count_graph);
            Json config{{"graph", g.spec_string()}, {"mode", count_mode}};
            config.update(budget_echo);
            rep = make_report("count", std::move(config));
            if (count_mode == "independent") {
                BigCount cnt = count_independent_sets(g, budget);
                rep["count"] = json_big(cnt);
                rep["log2_count"] = log2_big(cnt);
            } else if (count_mode == "max") {
                MaxISResult r = max_independent_set(g, budget);
                rep["count"] = json_big(BigCount(r.size));
                rep["log2_count"] = r.size ? Json(log2_big(BigCount(r.size))) : Json(nullptr);
                rep["witness"] = cli_detail::witness_labels(g, r.witness);
            } else {
                BigCount cnt = enumerate_maximal_independent_sets(g, budget);
                rep["count"] = json_big(cnt);
                rep["log2_count"] = log2_big(cnt);
            }
        } else if (cmd_containers->parsed()) {
            ImplicitGraph g = parse_graph_spec(cont_graph);
            Schedule sched = parse_schedule(cont_delta, cont_switch);
            DenseGraph d = DenseGraph::of(g, budget);
            std::size_t max_s;
            if (opt_max_s->count()) {
                max_s = static_cast<std::size_t>(cont_max_s);
            } else {
                Rational fp_bound = Rational(BigCount(d.num_vertices())) /
                                    sched.stages.back().delta;
                max_s = floor_rational(fp_bound).convert_to<std::size_t>() + sched.stages.size();
            }
            Json config{{"graph", g.spec_string()},
                        {"schedule", schedule_to_string(sched)},
                        {"max_s", max_s},
                        {"verify", cont_verify}};
            config.update(budget_echo);
            rep = make_report("containers", std::move(config));
            if (cont_verify) {
                ContainerReport r = verify_container_property(d, sched, budget);
                bool pass = r.covered && r.fingerprint_subset && r.replay_deterministic &&
                            r.fingerprint_bound_ok;
                rep["n_independent_sets"] = json_big(r.n_independent_sets);
                rep["covered"] = r.covered;
                rep["fingerprint_subset"] = r.fingerprint_subset;
                rep["replay_deterministic"] = r.replay_deterministic;
                rep["fingerprint_bound_ok"] = r.fingerprint_bound_ok;
                rep["max_fingerprint"] = r.max_fingerprint;
                rep["max_container"] = r.max_container;
                rep["n_containers"] = r.n_containers;
                rep["pass"] = pass;
                code = pass ? 0 : 2;
            } else {
                auto rows = enumerate_containers(d, sched, max_s, budget, threads);
                std::set<std::vector<std::size_t>> distinct;
                std::size_t max_fp = 0, max_cont = 0;
                for (const FingerprintContainer& r : rows) {
                    distinct.insert(r.container);
                    max_fp = std::max(max_fp, r.fingerprint.size());
                    max_cont = std::max(max_cont, r.container.size());
                }
                rep["n_independent_sets"] = nullptr;
                rep["covered"] = nullptr;
                rep["max_fingerprint"] = max_fp;
                rep["max_container"] = max_cont;
                rep["n_containers"] = distinct.size();
                rep["n_fingerprints"] = rows.size();
            }
        } else if (cmd_supersat->parsed()) {
            SearchMode mode =
                ss_mode == "exhaustive" ? SearchMode::exhaustive : SearchMode::random;
            Json config{{"lemma", ss_lemma}, {"n", ss_n}, {"x", ss_x}, {"mode", ss_mode}};
            if (mode == SearchMode::random) {
                config["trials"] = ss_trials;
                config["seed"] = ss_seed;
            }
            std::size_t x = static_cast<std::size_t>(ss_x);
            if (ss_lemma == "prop64") {
                std::size_t window = opt_ss_t->count() ? static_cast<std::size_t>(ss_t) : 1;
                config["t"] = window;
                config.update(budget_echo);
                rep = make_report("supersat", std::move(config));
                WeightedCheck chk =
                    weighted_difference_check(ss_n, window, x, mode, ss_trials, ss_seed, budget);
                rep["family_size"] = chk.family_size;
                rep["bound"] = json_rational(chk.bound);
                rep["observed_min"] = json_rational(chk.observed_min);
                rep["witness"] = json_family(chk.witness)["members"];
                rep["exhaustive"] = chk.exhaustive;
                rep["pass"] = chk.pass;
                code = chk.pass ? 0 : 2;
            } else {
                SupersatCheck chk;
                std::optional<ImplicitGraph> g;
                if (ss_lemma == "kleitman") {
                    chk = kleitman_check(ss_n, x, mode, ss_trials, ss_seed, budget);
                    g = comparability_graph(ss_n);
                } else if (ss_lemma == "hamming") {
                    int t = opt_ss_t->count() ? ss_t : 1;
                    config["t"] = t;
                    chk = hamming_supersat_check(ss_n, t, x, mode, ss_trials, ss_seed, budget);
                    g = hamming_graph(ss_n, t);
                } else if (ss_lemma == "tilt") {
                    config["p"] = ss_p;
                    config["q"] = ss_q;
                    chk = tilt_supersat_check(ss_n, ss_p, ss_q, x, mode, ss_trials, ss_seed, budget);
                    g = tilt_graph(ss_n, ss_p, ss_q);
                } else if (ss_lemma == "transport") {
                    if (!opt_ss_k->count())
                        throw std::invalid_argument("--k is required for the transport lemma");
                    int t = opt_ss_t->count() ? ss_t : 1;
                    config["k"] = ss_k;
                    config["t"] = t;
                    chk = transport_supersat_check(ss_n, ss_k, t, x, mode, ss_trials, ss_seed,
                                                   budget);
                    g = transport_graph(ss_n, ss_k, t);
                } else if (ss_lemma == "mono") {
                    if (!opt_ss_R->count())
                        throw std::invalid_argument("--R is required for the mono lemma");
                    SetMask R = hex_to_mask(ss_R);
                    config["R"] = mask_to_hex(R);
                    chk = mono_supersat_check(ss_n, R, x, mode, ss_trials, ss_seed, budget);
                    g = mono_diff_graph(ss_n, R);
                } else {  // claim-cd: --x carries the family size itself
                    chk = claim_cd_check(ss_n, x, mode, ss_trials, ss_seed, budget);
                    g = intersection_graph(ss_n, 1);
                }
                config.update(budget_echo);
                rep = make_report("supersat", std::move(config));
                rep["family_size"] = chk.family_size;
                rep["bound"] = json_rational(chk.bound);
                rep["observed_min"] = json_big(chk.observed_min);
                rep["witness"] = cli_detail::witness_labels(*g, chk.witness);
                rep["exhaustive"] = chk.exhaustive;
                rep["pass"] = chk.pass;
                code = chk.pass ? 0 : 2;
            }
        } else if (cmd_bounds->parsed()) {
            Json config{{"family", bd_family}, {"n", bd_n}};
            Rational bound;
            if (bd_family == "hamming") {
                if (!opt_bd_t->count())
                    throw std::invalid_argument("--t is required for the hamming bound");
                config["t"] = bd_t;
                bound = hamming_bound(bd_n, bd_t);
            } else if (bd_family == "transport") {
                if (!opt_bd_k->count() || !opt_bd_d->count())
                    throw std::invalid_argument("--k and --d are required for the transport bound");
                config["k"] = bd_k;
                config["d"] = bd_d;
                bound = transport_bound(bd_n, bd_k, bd_d);
            } else {
                if (!opt_bd_t->count())
                    throw std::invalid_argument("--t is required for the katona bound");
                config["t"] = bd_t;
                bound = Rational(katona_K(bd_n, bd_t));
            }
            rep = make_report("bounds", std::move(config));
            rep["bound"] = json_rational_approx(bound);
        } else if (cmd_katona->parsed()) {
            Rational p = parse_rational(rk_p);
            Json config{{"n", rk_n},
                        {"t", rk_t},
                        {"p", json_rational(p)},
                        {"trials", rk_trials},
                        {"seed", rk_seed}};
            config.update(budget_echo);
            rep = make_report("random-katona", std::move(config));
            MonteCarloReport r = monte_carlo_katona(rk_n, rk_t, p, rk_trials, rk_seed, budget);
            Json body = json_monte_carlo(r);
            rep["per_trial"] = body["per_trial"];
            rep["mean_ratio"] = body["mean_ratio"];
            rep["max_ratio"] = body["max_ratio"];
            rep["K"] = body["K"];
            rep["p2n"] = body["p2n"];
        } else if (cmd_construct->parsed()) {
            auto need = [&](const CLI::Option* opt, const char* flag) {
                if (!opt->count())
                    throw std::invalid_argument(std::string(flag) + " is required for --what " +
                                                cs_what);
            };
            Json config{{"what", cs_what}};
            if (cs_what == "good-triples") {
                need(opt_cs_n, "--n");
                need(opt_cs_k, "--k");
                config["n"] = cs_n;
                config["k"] = cs_k;
                rep = make_report("construct", std::move(config));
                rep["count"] = json_big(good_triple_count(cs_n, cs_k));
                if (cs_emit) {
                    Json arr = Json::array();
                    for (const GoodTriple& t : good_triples(cs_n, cs_k))
                        arr.push_back(
                            Json{{"B", mask_to_hex(t.B)}, {"r", t.r}, {"s", t.s}});
                    rep["triples"] = std::move(arr);
                }
            } else if (cs_what == "fT") {
                need(opt_cs_n, "--n");
                need(opt_cs_k, "--k");
                need(opt_cs_B, "--B");
                need(opt_cs_r, "--r");
                need(opt_cs_s, "--s");
                GoodTriple t{hex_to_mask(cs_B), cs_r, cs_s};
                config["n"] = cs_n;
                config["k"] = cs_k;
                config["B"] = mask_to_hex(t.B);
                config["r"] = t.r;
                config["s"] = t.s;
                config["choices"] = cs_choices;
                rep = make_report("construct", std::move(config));
                Family f =
                    construct_patch_family(t, cs_n, cs_k, cli_detail::parse_choice_bits(cs_choices));
                rep["family_size"] = f.members.size();
                rep["family"] = json_family(f);
                if (!cs_family_out.empty()) {
                    std::ofstream fo(cs_family_out);
                    if (!fo)
                        throw std::invalid_argument("cannot open output file '" + cs_family_out +
                                                    "'");
                    write_family(fo, f);
                }
            } else if (cs_what == "matching") {
                need(opt_cs_n, "--n");
                need(opt_cs_k, "--k");
                config["n"] = cs_n;
                config["k"] = cs_k;
                config["i"] = cs_i;
                rep = make_report("construct", std::move(config));
                auto edges = matching_edges(cs_n, cs_k, cs_i);
                Json earr = Json::array();
                for (const auto& [lo, hi] : edges)
                    earr.push_back(Json::array({mask_to_hex(lo), mask_to_hex(hi)}));
                rep["edges"] = std::move(earr);
                rep["n_edges"] = edges.size();
                rep["n_transversals"] = json_big(pow2(static_cast<unsigned>(edges.size())));
                if (cs_emit) {
                    Json fams = Json::array();
                    for_each_matching_transversal(
                        cs_n, cs_k, cs_i,
                        [&](const Family& f) { fams.push_back(json_family(f)["members"]); },
                        budget);
                    rep["families"] = std::move(fams);
                }
            } else if (cs_what == "c78") {
                need(opt_cs_n, "--n");
                if (cs_n % 2 != 0)
                    throw std::invalid_argument("the half-split generator needs an even ground size");
                config["n"] = cs_n;
                rep = make_report("construct", std::move(config));
                rep["base_family_size"] = json_big(3 * binomial(cs_n, cs_n / 2) / 2);
                rep["count"] = json_big(half_split_count(cs_n));
                if (cs_emit) {
                    Json fams = Json::array();
                    for_each_half_split_family(
                        cs_n,
                        [&](const SetPairFamily& f) {
                            fams.push_back(json_set_pair_family(f)["pairs"]);
                        },
                        budget);
                    rep["families"] = std::move(fams);
                }
            } else if (cs_what == "isp-check") {
                need(opt_cs_file, "--file");
                auto in = cli_detail::open_input(cs_file);
                SetPairFamily f = read_set_pair_family(in);
                int n = opt_cs_n->count() ? cs_n : f.N;
                SetPairFamily reground = f;
                reground.N = n;
                validate_set_pair_family(reground);
                config["file"] = cs_file;
                config["n"] = n;
                rep = make_report("construct", std::move(config));
                bool pass = is_isp(f, n);
                rep["size"] = f.pairs.size();
                rep["cross_violations"] = count_isp_violations(f);
                rep["pass"] = pass;
                code = pass ? 0 : 2;
            } else {  // skew-check
                need(opt_cs_file, "--file");
                need(opt_cs_a, "--a");
                need(opt_cs_b, "--b");
                auto in = cli_detail::open_input(cs_file);
                SetPairFamily f = read_set_pair_family(in);
                config["file"] = cs_file;
                config["a"] = cs_a;
                config["b"] = cs_b;
                rep = make_report("construct", std::move(config));
                bool pass = is_skew(f, cs_a, cs_b);
                rep["size"] = f.pairs.size();
                rep["order_violations"] = count_skew_violations(f);
                rep["pass"] = pass;
                code = pass ? 0 : 2;
            }
        } else {  // verify-all
            rep = make_report("verify-all", Json{{"level", verify_level}});
            auto results = run_acceptance();
            Json arr = Json::array();
            bool all = true;
            for (const CriterionResult& r : results) {
                Json row{{"index", r.index}, {"name", r.name}, {"pass", r.pass},
                         {"detail", r.detail}};
                if (timing) row["seconds"] = r.seconds;
                arr.push_back(std::move(row));
                all = all && r.pass;
            }
            rep["criteria"] = std::move(arr);
            rep["pass"] = all;
            code = all ? 0 : 2;
        }
    } catch (const FamilyFormatError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (timing)
        rep["wall_clock_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) {
            err << "error: cannot open output file '" << out_path << "'\n";
            return 1;
        }
        emit_report(rep, format, f);
    } else {
        emit_report(rep, format, out);
    }
    return code;
}

}  // namespace boollat
