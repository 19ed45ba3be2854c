#include "kernmink/report.hpp"

namespace kernmink {

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json kernel_json(const KernelSpec& spec) {
    json j;
    j["kind"] = to_string(spec.kind);
    if (spec.kind == KernelKind::HeinBousquet) {
        j["alpha"] = spec.alpha;
        j["beta"] = spec.beta;
    }
    j["gamma"] = spec.gamma;
    return j;
}

json map_config_json(const MapConfig& cfg) {
    return json{{"n", cfg.n},
                {"period", cfg.period},
                {"per_feature_dim", cfg.per_feature_dim()}};
}

json model_json(const ClusterModel& model, int k) {
    json j;
    j["k"] = k;
    j["p"] = model.p.value();
    j["objective"] = model.objective;
    j["iterations"] = model.iterations;
    j["converged"] = model.converged;
    j["center_solver_iterations"] = model.center_solver_iterations;
    j["cluster_sizes"] = model.cluster_sizes(static_cast<std::size_t>(k));
    j["assignments"] = model.assignments;
    j["objective_trace"] = model.objective_trace;
    j["weights"] = model.weights ? matrix_json(model.weights->w) : json(nullptr);
    return j;
}

json metrics_json(const MetricResult& metrics) {
    json j;
    j["nmi"] = metrics.nmi;
    j["purity"] = metrics.purity;
    j["contingency"] = json{{"cluster_ids", metrics.contingency.row_ids},
                            {"class_ids", metrics.contingency.col_ids},
                            {"counts", metrics.contingency.counts}};
    return j;
}

json approximation_json(const ApproximationReport& report) {
    return json{{"pairs", report.pairs},
                {"max_abs_error", report.max_abs},
                {"mean_abs_error", report.mean_abs},
                {"max_rel_error", report.max_rel},
                {"mean_rel_error", report.mean_rel}};
}

json diagnostics_json(const DiagnosticsReport& report) {
    json probes = json::array();
    for (const auto& p : report.probes) {
        probes.push_back(json{{"p", p.p},
                              {"D", p.dims},
                              {"relative_contrast", p.relative_contrast},
                              {"relative_variance", p.relative_variance},
                              {"N", p.n},
                              {"seed", p.seed}});
    }
    return json{{"generator", to_string(report.generator)}, {"probes", std::move(probes)}};
}

json selection_json(const PSelectionResult& result) {
    return json{{"grid", result.grid},
                {"scores", result.scores},
                {"chosen_p", result.chosen_p},
                {"labeled_fraction", result.labeled_fraction},
                {"repeats", result.repeats},
                {"labeled_indices", result.labeled_indices}};
}

json make_report(const std::string& command, json config) {
    json j;
    j["schema"] = kReportSchemaId;
    j["command"] = command;
    j["config"] = std::move(config);
    return j;
}

} // namespace kernmink
