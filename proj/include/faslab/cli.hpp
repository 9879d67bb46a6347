#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faslab/constructions.hpp"
#include "faslab/digraph.hpp"
#include "faslab/discrepancy.hpp"
#include "faslab/edge_list_io.hpp"
#include "faslab/errors.hpp"
#include "faslab/exact_oracle.hpp"
#include "faslab/greedy_fas.hpp"
#include "faslab/harness.hpp"
#include "faslab/quasirandom.hpp"

namespace faslab {

namespace detail {

inline long long parse_int_arg(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw InputError("");
        return v;
    } catch (const std::exception&) {
        throw InputError(std::string("expected an integer for ") + what + ", got \"" + text + "\"");
    }
}

inline void write_graph_output(const Digraph& g, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        write_digraph(out, g);
    } else {
        write_digraph_file(out_path, g);
    }
}

inline void ensure_valid_fas(const Digraph& g, const FasResult& fas) {
    std::vector<Edge> kept;
    kept.reserve(static_cast<std::size_t>(g.edge_count()));
    std::vector<Edge> removed = fas.removed;
    std::sort(removed.begin(), removed.end());
    for (const Edge& e : g.edges())
        if (!std::binary_search(removed.begin(), removed.end(), e)) kept.push_back(e);
    const Digraph residual = Digraph::from_edge_list(g.vertex_count(), std::move(kept));
    if (!is_acyclic(residual)) throw std::logic_error("produced feedback arc set leaves a cycle");
}

inline std::vector<int> parse_k_list(const std::string& text) {
    std::vector<int> ks;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) ks.push_back(static_cast<int>(parse_int_arg(item, "--k")));
    if (ks.empty()) throw InputError("--k needs at least one even value");
    return ks;
}

struct CliOptions {
    // gen
    std::string gen_family;
    std::vector<std::string> gen_args;
    std::uint64_t gen_seed = 1;
    std::string gen_mode = "one-way";
    int gen_tries = 100;
    std::string gen_out;
    // fas
    std::string fas_file;
    std::string fas_algo = "greedy";
    int fas_trials = 32;
    std::uint64_t fas_seed = 1;
    std::string fas_pattern = "c4arrow";
    double fas_threshold = -1;
    int fas_samples = 500;
    int fas_pair_samples = 2000;
    // discrepancy
    std::string disc_file;
    std::string disc_which = "tau";
    std::string disc_mode = "exact";
    // quasi
    std::string quasi_file;
    double quasi_delta = 0.5;
    std::string quasi_k = "4,6";
    bool quasi_json = false;
    int quasi_trials = 16;
    std::uint64_t quasi_seed = 1;
    std::string quasi_out;
    // experiment
    std::string experiment_spec;
};

inline int run_gen(const CliOptions& opt, std::ostream& out) {
    const auto need_args = [&](std::size_t count) {
        if (opt.gen_args.size() != count)
            throw InputError("gen " + opt.gen_family + " takes " + std::to_string(count) + " parameter(s)");
    };
    Digraph g;
    if (opt.gen_family == "tournament") {
        need_args(1);
        g = random_tournament(static_cast<int>(parse_int_arg(opt.gen_args[0], "n")), opt.gen_seed);
    } else if (opt.gen_family == "transitive") {
        need_args(1);
        g = transitive_tournament(static_cast<int>(parse_int_arg(opt.gen_args[0], "n")));
    } else if (opt.gen_family == "bipartite") {
        need_args(2);
        const BipartiteMode mode = opt.gen_mode == "random" ? BipartiteMode::random_orientation
                                   : opt.gen_mode == "one-way"
                                       ? BipartiteMode::one_way
                                       : throw InputError("--mode must be one-way or random");
        g = oriented_complete_bipartite(static_cast<int>(parse_int_arg(opt.gen_args[0], "a")),
                                        static_cast<int>(parse_int_arg(opt.gen_args[1], "b")), mode, opt.gen_seed);
    } else if (opt.gen_family == "blowup") {
        need_args(2);
        g = cycle_blowup(static_cast<int>(parse_int_arg(opt.gen_args[0], "r")),
                         static_cast<int>(parse_int_arg(opt.gen_args[1], "t")));
    } else if (opt.gen_family == "gadget") {
        need_args(1);
        g = near_acyclic_gadget(static_cast<int>(parse_int_arg(opt.gen_args[0], "N")));
    } else if (opt.gen_family == "orient") {
        need_args(1);
        g = random_orientation(read_undirected_file(opt.gen_args[0]), opt.gen_seed);
    } else if (opt.gen_family == "orient-dyadic") {
        need_args(1);
        const UndirectedGraph h = read_undirected_file(opt.gen_args[0]);
        const DyadicOrientResult r = orient_until_dyadic(
            h, {VertexOrdering::identity(h.vertex_count())}, opt.gen_tries, opt.gen_seed);
        if (!r.digraph)
            throw InputError("orient-dyadic: no orientation passed within " + std::to_string(r.max_tries) +
                             " tries");
        g = *r.digraph;
    } else {
        throw InputError("unknown gen family \"" + opt.gen_family + "\"");
    }
    write_graph_output(g, opt.gen_out, out);
    return 0;
}

inline int run_fas(const CliOptions& opt, std::ostream& out) {
    const Digraph g = read_digraph_file(opt.fas_file);
    if (opt.fas_algo == "exact") {
        const MinFasResult r = min_fas_exact(g, ExactBudget::from_env());
        const FasResult fas = fas_from_ordering(g, r.witness);
        ensure_valid_fas(g, fas);
        out << "beta=" << r.value << "\n";
        return 0;
    }
    if (opt.fas_algo == "greedy") {
        const GreedyResult r = randomized_fas(g, opt.fas_trials, opt.fas_seed);
        ensure_valid_fas(g, r.fas);
        out << "fas_size=" << r.fas.size() << "\n";
        out << "surplus=" << r.fas.surplus.str() << "\n";
        return 0;
    }
    if (opt.fas_algo == "bfree") {
        const Digraph pattern =
            opt.fas_pattern == "c4arrow" ? alternating_c4() : read_digraph_file(opt.fas_pattern);
        PatternFreeParams params;
        params.trials = opt.fas_trials;
        params.seed = opt.fas_seed;
        params.max_samples = opt.fas_samples;
        params.pair_samples = opt.fas_pair_samples;
        if (opt.fas_threshold >= 0) params.threshold = opt.fas_threshold;
        const PatternFreeFasResult r = pattern_free_fas(g, pattern, params);
        ensure_valid_fas(g, r.fas);
        out << "fas_size=" << r.fas.size() << "\n";
        out << "regime=" << (r.dense_regime ? "dense" : "sparse") << "\n";
        out << "witness=" << (r.used_witness ? "found" : "none") << "\n";
        return 0;
    }
    throw InputError("--algo must be greedy, exact, or bfree");
}

inline void print_vertex_set(std::ostream& out, const char* label, const std::vector<VertexId>& set) {
    out << label << "=";
    for (std::size_t i = 0; i < set.size(); ++i) out << (i ? " " : "") << set[i];
    out << "\n";
}

inline int run_discrepancy(const CliOptions& opt, std::ostream& out) {
    const Digraph g = read_digraph_file(opt.disc_file);
    const ExactBudget budget = ExactBudget::from_env();
    const bool witness_mode = opt.disc_mode == "witness";
    if (opt.disc_mode != "exact" && opt.disc_mode != "witness")
        throw InputError("--mode must be exact or witness");
    if (opt.disc_which == "tau") {
        const DiscrepancyResult r = directional_discrepancy_exact(g, budget);
        out << "tau=" << r.value << "\n";
        if (witness_mode) {
            print_vertex_set(out, "A", r.witness.set_a);
            print_vertex_set(out, "B", r.witness.set_b);
        }
        return 0;
    }
    if (opt.disc_which == "tau-star") {
        const DiscrepancyResult r = disjoint_discrepancy_exact(g, budget);
        out << "tau_star=" << r.value << "\n";
        if (witness_mode) {
            print_vertex_set(out, "A", r.witness.set_a);
            print_vertex_set(out, "B", r.witness.set_b);
        }
        return 0;
    }
    if (opt.disc_which == "tau-part") {
        const std::int64_t value = partition_discrepancy_exact(g, budget);
        out << "tau_part=" << value << "\n";
        if (witness_mode) {
            const BalanceIdentity b = balance_identity(g);
            std::vector<VertexId> complement;
            const auto in_a = detail::membership(g.vertex_count(), b.positive_side);
            for (int v = 0; v < g.vertex_count(); ++v)
                if (!in_a[static_cast<std::size_t>(v)]) complement.push_back(v);
            print_vertex_set(out, "A", b.positive_side);
            print_vertex_set(out, "B", complement);
        }
        return 0;
    }
    throw InputError("--which must be tau, tau-star, or tau-part");
}

inline int run_quasi(const CliOptions& opt, std::ostream& out) {
    const Digraph g = read_digraph_file(opt.quasi_file);
    ReportParams params;
    params.delta = opt.quasi_delta;
    params.k_values = parse_k_list(opt.quasi_k);
    params.greedy_trials = opt.quasi_trials;
    params.seed = opt.quasi_seed;
    params.budget = ExactBudget::from_env();
    const std::string text = report_serialize(quasirandom_report(g, params));
    if (opt.quasi_out.empty()) {
        out << text;
    } else {
        std::ofstream file(opt.quasi_out, std::ios::binary);
        if (!file) throw InputError("cannot open file for writing: " + opt.quasi_out);
        file << text;
    }
    return 0;
}

inline int run_experiment(const CliOptions& opt, std::ostream& out) {
    std::ifstream in(opt.experiment_spec);
    if (!in) throw InputError("cannot open experiment spec: " + opt.experiment_spec);
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("experiment spec: ") + e.what());
    }
    const ExperimentSpec spec = ExperimentSpec::from_json(j);
    ExperimentResult result;
    if (spec.out.empty()) {
        result = experiment_scaling(spec, out);
    } else {
        std::ofstream csv(spec.out, std::ios::binary);
        if (!csv) throw InputError("cannot open file for writing: " + spec.out);
        result = experiment_scaling(spec, csv);
    }
    if (result.fit) {
        out << "fit: slope=" << format_double(result.fit->slope)
            << " intercept=" << format_double(result.fit->intercept)
            << " residual=" << format_double(result.fit->residual) << " points=" << result.fit->points.size()
            << "\n";
    } else {
        out << "fit: skipped (need >= 3 positive-surplus sizes)\n";
    }
    return 0;
}

}  // namespace detail

/// Entry point shared by the binary and the tests. argv[0] is implied.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"feedback arc set laboratory"};
    app.require_subcommand(1);
    detail::CliOptions opt;

    CLI::App* gen = app.add_subcommand("gen", "generate a graph family, edge-list output");
    gen->add_option("family", opt.gen_family,
                    "tournament | transitive | bipartite | blowup | gadget | orient | orient-dyadic")
        ->required();
    gen->add_option("params", opt.gen_args, "family parameters");
    gen->add_option("--seed", opt.gen_seed, "random seed");
    gen->add_option("--mode", opt.gen_mode, "bipartite orientation: one-way | random");
    gen->add_option("--tries", opt.gen_tries, "orientation retries for orient-dyadic");
    gen->add_option("--out", opt.gen_out, "output path (default stdout)");

    CLI::App* fas = app.add_subcommand("fas", "compute a feedback arc set");
    fas->add_option("file", opt.fas_file, "edge-list input")->required();
    fas->add_option("--algo", opt.fas_algo, "greedy | exact | bfree");
    fas->add_option("--trials", opt.fas_trials, "greedy trials");
    fas->add_option("--seed", opt.fas_seed, "random seed");
    fas->add_option("--pattern", opt.fas_pattern, "forbidden pattern for bfree: c4arrow or a file");
    fas->add_option("--threshold", opt.fas_threshold, "biased-pair difference threshold (bfree)");
    fas->add_option("--samples", opt.fas_samples, "tuple sample budget (bfree)");
    fas->add_option("--pair-samples", opt.fas_pair_samples, "vertex-pair samples per candidate (bfree)");

    CLI::App* disc = app.add_subcommand("discrepancy", "exact discrepancy maxima");
    disc->add_option("file", opt.disc_file, "edge-list input")->required();
    disc->add_option("--which", opt.disc_which, "tau | tau-star | tau-part");
    disc->add_option("--mode", opt.disc_mode, "exact | witness");

    CLI::App* quasi = app.add_subcommand("quasi", "quasirandom-direction diagnostics (JSON)");
    quasi->add_option("file", opt.quasi_file, "edge-list input")->required();
    quasi->add_option("--delta", opt.quasi_delta, "bias threshold in (0,1)");
    quasi->add_option("--k", opt.quasi_k, "comma-separated even walk lengths");
    quasi->add_flag("--json", opt.quasi_json, "emit JSON (the default and only format)");
    quasi->add_option("--trials", opt.quasi_trials, "greedy trials for the surplus proxy");
    quasi->add_option("--seed", opt.quasi_seed, "random seed");
    quasi->add_option("--out", opt.quasi_out, "output path (default stdout)");

    CLI::App* experiment = app.add_subcommand("experiment", "run a scaling experiment from a JSON spec");
    experiment->add_option("spec", opt.experiment_spec, "experiment spec JSON file")->required();

    try {
        std::vector<std::string> argv_storage;
        argv_storage.push_back("faslab");
        argv_storage.insert(argv_storage.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const std::string& s : argv_storage) argv.push_back(s.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (gen->parsed()) return detail::run_gen(opt, out);
        if (fas->parsed()) return detail::run_fas(opt, out);
        if (disc->parsed()) return detail::run_discrepancy(opt, out);
        if (quasi->parsed()) return detail::run_quasi(opt, out);
        if (experiment->parsed()) return detail::run_experiment(opt, out);
        err << "no subcommand given\n";
        return 1;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetError& e) {
        err << "budget refused: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace faslab
