#pragma once

#include <string>

#include "error.hpp"

namespace dilate {

inline constexpr const char* kVersion = "0.1.0";

struct RunResult {
    Status status = Status::ok;
    std::string payload;  // JSON or CSV report text
    std::string error;    // single-line machine-parsable message when status != ok
};

// Executes one subcommand described by a JSON request:
//   { "command": "arith|smooth|weyl|check|corr|lemma|counterexample|trajectory",
//     "format": "csv"|"json", "seed": u64, "threads": n, "freq_cap": u64,
//     "params": { ... per-command ... } }
// Never throws; errors are folded into the result status.
RunResult run_request_json(const std::string& request);

}  // namespace dilate
