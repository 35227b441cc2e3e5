#pragma once

#include <string>

namespace ahm {

struct RunOutcome {
  std::string output;   // report document (JSON or CSV per config)
  int checks_failed = 0;
};

// Executes one subcommand described by a JSON config document:
//   {"subcommand": "validate|curvature|energy|gauge|verify|sweep|fuzz",
//    "specs": ["path", ...] or "spec_json": {...},
//    "format": "json"|"csv", "grid": [nr, nxi, nphi], "tol": ...,
//    "seed": ..., "samples": ..., "amplitude": ...,
//    "n_range": [lo, hi], "s_range": [lo, hi, step],
//    "background": {"n":, "a":, "r0":, "lambda": []}}
// Throws SpecError for malformed configs.
RunOutcome run_command(const std::string& config_json);

}  // namespace ahm
