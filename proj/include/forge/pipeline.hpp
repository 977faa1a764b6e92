#ifndef FORGE_PIPELINE_HPP
#define FORGE_PIPELINE_HPP

#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "forge/io.hpp"

namespace forge {

/// A pipeline stage failed; `stage` names it.
struct StageError : std::runtime_error {
    StageError(std::string stage_name, const std::string& what)
        : std::runtime_error(stage_name + ": " + what), stage(std::move(stage_name)) {}
    std::string stage;
};

/// Upper bound on the number of labels: per color, partial injections of a
/// (2r−1)-class into r slots, raised to the number of colors.
inline double config_space_label_bound(const BalancedParams& p) {
    double per_color = 0;
    const int c = p.class_size();
    for (int j = 0; j <= std::min(p.r, c); ++j) {
        double ways = 1;
        for (int t = 0; t < j; ++t) ways *= static_cast<double>(p.r - t) * (c - t) / (t + 1);
        per_color += ways;
    }
    return std::pow(per_color, p.k + 1);
}

struct PipelineOutput {
    json manifest;
    std::map<std::string, json> artifacts;  // file name -> content
};

inline json space_to_json(const ConfigSpace& cs) {
    const auto& p = cs.params();
    json j = complex_to_json(cs.complex());
    j["config_space"] = json{{"r", p.r}, {"d", p.d}, {"k", p.k}, {"s", p.s}, {"m", p.m},
                             {"coloring", coloring_to_json(cs.coloring())}};
    return j;
}

inline json space_labels_to_json(const ConfigSpace& cs) {
    json labels = json::array();
    for (std::size_t i = 0; i < cs.size(); ++i)
        labels.push_back(json{{"face", cs.flat(cs.label(static_cast<int>(i)))},
                              {"label", config_label_to_json(cs.label(static_cast<int>(i)), cs.params().m)}});
    return json{{"labels", labels}};
}

/// Rebuilds the configuration space described by a `config-space` output file
/// and checks the stored facets against it.
inline ConfigSpace space_from_json(const json& j) {
    return with_input_errors("configuration space", [&] {
        const auto& c = j.at("config_space");
        auto params = balanced_params(c.at("r").get<int>(), c.at("d").get<int>());
        ConfigSpace cs(params, coloring_from_json(c.at("coloring")));
        if (!(complex_from_json(j) == cs.complex())) throw InputError("stored facets do not match the parameters");
        return cs;
    });
}

/// build → matching → field checks → Π monotonicity → certificate → homology.
inline PipelineOutput pipeline_balanced(int r, int d, double label_limit = 5e6) {
    PipelineOutput out;
    json verdicts, details;
    BalancedParams p;
    try {
        p = balanced_params(r, d);
    } catch (const InputError& e) {
        throw InputError(std::string("parameters: ") + e.what());
    }
    const double bound = config_space_label_bound(p);
    if (bound > label_limit)
        throw ResourceLimit("parameters: configuration space may have " + std::to_string(static_cast<long long>(bound)) +
                            " labels (limit " + std::to_string(static_cast<long long>(label_limit)) + ")");

    auto stage = [](const char* name, auto&& f) {
        try {
            return f();
        } catch (const ResourceLimit&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(name, e.what());
        }
    };

    const ConfigSpace cs = stage("build", [&] { return build_config_space(p); });
    const FaceLattice lattice(cs.complex());
    const auto bm = stage("matching", [&] { return balanced_matching(cs); });
    const auto violations = check_dvf(bm.field, lattice);
    const auto acyc = acyclicity(bm.field, lattice);
    const auto mono = pi_monotonicity(bm, cs);
    verdicts["dvf_valid"] = violations.empty();
    verdicts["acyclic"] = acyc.acyclic;
    verdicts["pi_monotone"] = mono.ok();
    details["pi_monotonicity"] = json{{"segments_checked", mono.segments_checked},
                                      {"terminal_segments", mono.terminal_segments},
                                      {"terminal_non_decreasing", mono.terminal_non_decreasing},
                                      {"violations", mono.violations.size()}};
    if (!violations.empty()) throw StageError("check_dvf", violations.front().detail);
    if (!acyc.acyclic) throw StageError("acyclicity", "closed path " + acyc.witness_cycle->to_string());

    const auto cert = stage("certify", [&] { return connectivity_certificate(bm.field, lattice); });
    const int top = p.top_dimension();
    const std::size_t top_cells = cert.critical_by_dim.count(top) ? cert.critical_by_dim.at(top) : 0;
    const bool only_top = std::all_of(cert.critical.begin(), cert.critical.end(),
                                      [&](const Simplex& c) { return static_cast<int>(c.size()) - 1 == top; });
    verdicts["single_critical_vertex"] = true;
    verdicts["critical_cells_top_dimension"] = only_top;
    verdicts["connectivity_certified"] = !cert.min_dimension || *cert.min_dimension - 1 >= p.target_connectivity();
    details["certificate"] = certificate_to_json(cert);

    const auto h = stage("homology", [&] {
        HomologyOptions opt;
        opt.reduced = true;
        return homology(cs.complex(), opt);
    });
    bool agrees = h.torsion_free() && static_cast<int>(h.betti.size()) == top + 1;
    for (int i = 0; agrees && i < top; ++i) agrees = h.betti[static_cast<std::size_t>(i)] == 0;
    if (agrees) agrees = h.betti[static_cast<std::size_t>(top)] == static_cast<long long>(top_cells);
    verdicts["homology_agrees"] = agrees;
    details["homology"] = homology_to_json(h);
    details["perfect_matching"] = only_top && agrees;

    bool all = true;
    for (auto& [k, v] : verdicts.items()) all = all && v.get<bool>();
    verdicts["overall"] = all;

    json field = field_to_json(bm.field, critical_cells(bm.field, lattice));
    out.artifacts["config_space.json"] = space_to_json(cs);
    out.artifacts["config_space.labels.json"] = space_labels_to_json(cs);
    out.artifacts["field.json"] = field;

    json artifacts = json::object();
    for (const auto& [name, content] : out.artifacts) artifacts[name] = fnv1a_hex(dump(content));
    out.manifest = json{{"schema_version", kSchemaVersion},
                        {"command", "pipeline"},
                        {"parameters", json{{"r", p.r}, {"d", p.d}, {"k", p.k}, {"s", p.s}, {"m", p.m}}},
                        {"input_hashes", json::object()},
                        {"seed", nullptr},
                        {"artifacts", artifacts},
                        {"verdicts", verdicts},
                        {"details", details},
                        {"summary", json{{"faces", cs.size()},
                                         {"dimension", cs.complex().dimension()},
                                         {"target_connectivity", p.target_connectivity()}}}};
    return out;
}

namespace detail {

inline std::string cell(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace detail

/// Human-readable rendering of a manifest, a witness, or a certificate JSON.
inline std::string render_report(const json& j) {
    std::ostringstream os;
    if (j.contains("verdicts")) {
        os << "command: " << detail::cell(j.value("command", json("?"))) << "\n";
        if (j.contains("parameters")) os << "parameters: " << j["parameters"].dump() << "\n";
        if (j.contains("seed") && !j["seed"].is_null()) os << "seed: " << j["seed"].dump() << "\n";
        for (auto& [k, v] : j["verdicts"].items()) os << "  " << k << ": " << (v.is_boolean() ? (v.get<bool>() ? "ok" : "FAILED") : v.dump()) << "\n";
        if (j.contains("details")) {
            const auto& d = j["details"];
            if (d.contains("certificate")) {
                const auto& c = d["certificate"];
                os << "critical cells by dimension: " << c["critical_by_dim"].dump() << "\n";
                os << "connectivity: " << detail::cell(c["connectivity"]) << "\n";
            }
            if (d.value("perfect_matching", false)) os << "perfect matching: all critical cells besides the vertex are top-dimensional and counted by homology\n";
            if (d.contains("homology")) os << "reduced betti: " << d["homology"]["betti"].dump() << "\n";
        }
        if (j.contains("error")) os << "error in stage " << detail::cell(j["error"].value("stage", json("?"))) << ": "
                                    << detail::cell(j["error"].value("message", json(""))) << "\n";
    }
    if (j.contains("witness") && j["witness"].is_object()) {
        os << render_report(j["witness"]);
    } else if (j.contains("parts") && j.contains("weights")) {
        os << "part | points | weights\n";
        for (std::size_t i = 0; i < j["parts"].size(); ++i) {
            os << i + 1 << " | " << j["parts"][i].dump() << " | ";
            for (std::size_t t = 0; t < j["weights"][i].size(); ++t) os << (t ? " " : "") << detail::cell(j["weights"][i][t]);
            os << "\n";
        }
        os << "common point: ";
        for (std::size_t t = 0; t < j["point"].size(); ++t) os << (t ? " " : "") << detail::cell(j["point"][t]);
        os << "\n";
    }
    if (j.contains("acyclic") && !j["acyclic"].get<bool>() && j.contains("witness_cycle"))
        os << "closed gradient path: " << detail::cell(j["witness_cycle"]) << "\n";
    if (j.contains("exhausted") && j["exhausted"].get<bool>())
        os << "no witness: search space exhausted after " << j.value("candidates", 0) << " candidates\n";
    return os.str();
}

}  // namespace forge

#endif
