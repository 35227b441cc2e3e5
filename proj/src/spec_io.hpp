#pragma once

#include <string>

#include "json.hpp"
#include "metric.hpp"
#include "verifier.hpp"

namespace ahm {

using ordered_json = nlohmann::ordered_json;

// Spec document: {"n":, "a":, "r0":, "lambda":[...],
//   "exp_u_hat":{"terms":{"<order>": value}},
//   "exp_v_hat":{"terms":{"<order>": {"<mode>": [cos, sin]}}},
//   "w_hat":{"terms":{"<order>": {"i,j": [{"k":[...],"phase":[...],"amp":x}]}}}}
// The w_hat entries are the coefficients of r^{-order} in w_hat itself.
MetricSpec spec_from_json(const ordered_json& j);
MetricSpec spec_from_string(const std::string& text);
MetricSpec spec_from_file(const std::string& path);
ordered_json spec_to_json(const MetricSpec& spec);

ordered_json report_to_json(const EnergyReport& rep);
ordered_json diagnostics_to_json(const SpecDiagnostics& diag);

std::string library_version();

}  // namespace ahm
