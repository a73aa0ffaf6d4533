#pragma once

// JSON and CSV interchange. Operators serialize as
// {"dims": [h, k], "re": [[...]], "im": [[...]]} with row-major nested arrays;
// families as arrays of {"label", "op"} records; detectors carry their POVM,
// ancilla and a processing descriptor {"kind", "params"}.

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "uqd/estimation.hpp"
#include "uqd/povm.hpp"

namespace uqd {

nlohmann::json operator_to_json(const Matrix& op);
Matrix operator_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const State& state);
State state_from_json(const nlohmann::json& j);

nlohmann::json family_to_json(const OperatorFamily& family);
OperatorFamily family_from_json(const nlohmann::json& j);

nlohmann::json povm_to_json(const Povm& povm);
Povm povm_from_json(const nlohmann::json& j);

nlohmann::json detector_to_json(const UniversalDetector& detector);
UniversalDetector detector_from_json(const nlohmann::json& j);

// `include_wall` off keeps repeated runs byte-identical.
nlohmann::json report_to_json(const EstimationReport& report, bool include_wall = false);

struct ReportContext {
    std::string detector;
    Index dim_h = 0;
    std::string observable;
};

std::string csv_header();
std::string csv_row(const EstimationReport& report, const ReportContext& ctx,
                    bool include_wall = false);

}  // namespace uqd
