#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "faslab/constructions.hpp"
#include "faslab/digraph.hpp"
#include "faslab/errors.hpp"
#include "faslab/exact_oracle.hpp"
#include "faslab/greedy_fas.hpp"
#include "faslab/numeric.hpp"
#include "faslab/quasirandom.hpp"
#include "faslab/rng.hpp"

namespace faslab {

using ordered_json = nlohmann::ordered_json;

/// Fixed-key JSON form of a quasirandom report. Key order is stable; undefined
/// ratios serialize as null.
inline ordered_json report_to_json(const QuasirandomReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["tau"] = r.tau;
    j["tau_star"] = r.tau_star;
    j["tau_part"] = r.tau_part;
    j["pi_proxy"] = r.pi_proxy;
    j["c4_ratio"] = r.c4_ratio ? ordered_json(*r.c4_ratio) : ordered_json(nullptr);
    ordered_json ek, tr;
    for (std::size_t i = 0; i < r.k_values.size(); ++i) {
        const std::string key = std::to_string(r.k_values[i]);
        ek[key] = r.ek_ratio[i] ? ordered_json(*r.ek_ratio[i]) : ordered_json(nullptr);
        tr[key] = r.trace_ratio[i] ? ordered_json(*r.trace_ratio[i]) : ordered_json(nullptr);
    }
    j["ek_ratio"] = std::move(ek);
    j["trace_ratio"] = std::move(tr);
    j["lambda_ratio"] = r.lambda_ratio ? ordered_json(*r.lambda_ratio) : ordered_json(nullptr);
    j["bias"] = r.bias;
    j["balance_defect"] = r.balance_defect;
    j["exact_flags"] = {{"tau", r.tau_exact},
                        {"tau_star", r.tau_star_exact},
                        {"tau_part", r.tau_part_exact},
                        {"bias", r.bias_exact}};
    return j;
}

inline std::string report_serialize(const QuasirandomReport& r) { return report_to_json(r).dump(2) + "\n"; }

/// Inverse of report_serialize over the serialized fields.
inline QuasirandomReport report_parse(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("report_parse: ") + e.what());
    }
    QuasirandomReport r;
    r.n = j.at("n").get<std::int64_t>();
    r.m = j.at("m").get<std::int64_t>();
    r.tau = j.at("tau").get<std::int64_t>();
    r.tau_star = j.at("tau_star").get<std::int64_t>();
    r.tau_part = j.at("tau_part").get<std::int64_t>();
    r.pi_proxy = j.at("pi_proxy").get<double>();
    if (!j.at("c4_ratio").is_null()) r.c4_ratio = j.at("c4_ratio").get<double>();
    for (const auto& [key, value] : j.at("ek_ratio").items()) {
        r.k_values.push_back(std::stoi(key));
        r.ek_ratio.push_back(value.is_null() ? std::optional<double>{} : std::optional<double>{value.get<double>()});
    }
    for (const auto& [key, value] : j.at("trace_ratio").items()) {
        (void)key;
        r.trace_ratio.push_back(value.is_null() ? std::optional<double>{} : std::optional<double>{value.get<double>()});
    }
    if (!j.at("lambda_ratio").is_null()) r.lambda_ratio = j.at("lambda_ratio").get<double>();
    r.bias = j.at("bias").get<std::int64_t>();
    r.balance_defect = j.at("balance_defect").get<std::int64_t>();
    const auto& flags = j.at("exact_flags");
    r.tau_exact = flags.at("tau").get<bool>();
    r.tau_star_exact = flags.at("tau_star").get<bool>();
    r.tau_part_exact = flags.at("tau_part").get<bool>();
    r.bias_exact = flags.at("bias").get<bool>();
    return r;
}

/// One scaling experiment: a graph family swept over sizes, an algorithm run
/// `trials` times per size, medians fitted on the log-log scale.
struct ExperimentSpec {
    std::string family;           // tournament | blowup | bipartite | gadget
    std::vector<int> sizes;
    int trials = 1;
    std::uint64_t seed = 1;
    std::string algo = "greedy";  // greedy | exact
    std::string out;              // CSV path; empty = stdout
    int blowup_r = 3;

    static ExperimentSpec from_json(const ordered_json& j) {
        ExperimentSpec spec;
        try {
            spec.family = j.at("family").get<std::string>();
            spec.sizes = j.at("sizes").get<std::vector<int>>();
            spec.trials = j.value("trials", 1);
            spec.seed = j.value("seed", std::uint64_t{1});
            spec.algo = j.value("algo", std::string("greedy"));
            spec.out = j.value("out", std::string());
            if (j.contains("params") && j.at("params").contains("r"))
                spec.blowup_r = j.at("params").at("r").get<int>();
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("experiment spec: ") + e.what());
        }
        if (spec.sizes.empty()) throw InputError("experiment spec: empty size sweep");
        if (spec.trials < 1) throw InputError("experiment spec: trials must be >= 1");
        if (spec.algo != "greedy" && spec.algo != "exact")
            throw InputError("experiment spec: unknown algo \"" + spec.algo + "\"");
        return spec;
    }
};

struct ScalingFit {
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // RMS of log-scale residuals
    std::vector<std::pair<double, double>> points;  // (log m, log median surplus)
};

struct ExperimentRow {
    int size = 0;
    std::int64_t n = 0;
    std::int64_t m = 0;
    double surplus_median = 0;
    double surplus_iqr = 0;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::optional<ScalingFit> fit;  // present when >= 3 usable points
};

namespace detail {

inline double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n == 0) return 0;
    return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

// Tukey hinges: quartiles are medians of the lower/upper halves, the middle
// element excluded when the count is odd.
inline double iqr_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n < 2) return 0;
    const std::vector<double> lower(values.begin(), values.begin() + n / 2);
    const std::vector<double> upper(values.begin() + (n + 1) / 2, values.end());
    return median_of(upper) - median_of(lower);
}

inline Digraph make_family_instance(const ExperimentSpec& spec, int size, std::uint64_t seed) {
    if (spec.family == "tournament") return random_tournament(size, seed);
    if (spec.family == "blowup") return cycle_blowup(spec.blowup_r, size);
    if (spec.family == "bipartite")
        return oriented_complete_bipartite(size, size, BipartiteMode::random_orientation, seed);
    if (spec.family == "gadget") return near_acyclic_gadget(size);
    throw InputError("unknown experiment family \"" + spec.family + "\"");
}

}  // namespace detail

/// Runs the sweep, streaming CSV rows (n, m, surplus_median, surplus_iqr) as
/// they finish so partial output survives a failing size.
inline ExperimentResult experiment_scaling(const ExperimentSpec& spec, std::ostream& csv) {
    ExperimentResult result;
    csv << "n,m,surplus_median,surplus_iqr\n";
    const ExactBudget budget = ExactBudget::from_env();
    for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
        const int size = spec.sizes[i];
        const std::uint64_t size_seed = derive_seed(spec.seed, i);
        const Digraph g = detail::make_family_instance(spec, size, size_seed);
        std::vector<double> surpluses;
        surpluses.reserve(static_cast<std::size_t>(spec.trials));
        if (spec.algo == "exact") {
            const double surplus = directed_surplus_exact(g, budget).value();
            surpluses.assign(static_cast<std::size_t>(spec.trials), surplus);
        } else {
            for (int t = 0; t < spec.trials; ++t) {
                SplitMix64 rng(derive_seed(size_seed, static_cast<std::uint64_t>(t)));
                const GreedyResult r =
                    restricted_greedy(g, VertexOrdering::from_sequence(random_permutation(g.vertex_count(), rng)));
                surpluses.push_back(r.fas.surplus.value());
            }
        }
        ExperimentRow row{size, g.vertex_count(), g.edge_count(), detail::median_of(surpluses),
                          detail::iqr_of(surpluses)};
        csv << row.n << "," << row.m << "," << format_double(row.surplus_median) << ","
            << format_double(row.surplus_iqr) << "\n";
        csv.flush();
        result.rows.push_back(row);
    }

    std::vector<std::pair<double, double>> points;
    for (const ExperimentRow& row : result.rows)
        if (row.m > 0 && row.surplus_median > 0)
            points.push_back({std::log(static_cast<double>(row.m)), std::log(row.surplus_median)});
    if (points.size() >= 3) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& [x, y] : points) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = static_cast<double>(points.size());
        const double denom = n * sxx - sx * sx;
        if (denom > 0) {
            ScalingFit fit;
            fit.slope = (n * sxy - sx * sy) / denom;
            fit.intercept = (sy - fit.slope * sx) / n;
            double ss = 0;
            for (const auto& [x, y] : points) {
                const double r = y - (fit.slope * x + fit.intercept);
                ss += r * r;
            }
            fit.residual = std::sqrt(ss / n);
            fit.points = std::move(points);
            result.fit = std::move(fit);
        }
    }
    return result;
}

}  // namespace faslab
