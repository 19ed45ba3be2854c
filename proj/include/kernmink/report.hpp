#pragma once

#include <json.hpp>

#include "kernmink/clustering.hpp"
#include "kernmink/diagnostics.hpp"
#include "kernmink/evaluation.hpp"
#include "kernmink/feature_map.hpp"

namespace kernmink {

// Reports use insertion-ordered JSON so identical runs serialize
// byte-identically; timing lives under its own key and is the only part
// excluded from that guarantee.
using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchemaId = "kernmink-report-v1";

json matrix_json(const Matrix& m);
json kernel_json(const KernelSpec& spec);
json map_config_json(const MapConfig& cfg);
json model_json(const ClusterModel& model, int k);
json metrics_json(const MetricResult& metrics);
json approximation_json(const ApproximationReport& report);
json diagnostics_json(const DiagnosticsReport& report);
json selection_json(const PSelectionResult& result);

/// Report envelope: {"schema": ..., "command": ..., "config": ...}.
json make_report(const std::string& command, json config);

} // namespace kernmink
