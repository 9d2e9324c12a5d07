#pragma once

#include "orthoalg/types.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace orthoalg::io {

using nlohmann::json;

// ── Observable files ──────────────────────────────────────────────────────
//
// {
//   "name": "A",                              (optional)
//   "dim": 3,
//   "entries": [[[re, im], ...], ...],        (dim x dim, row-major)
//   "tolerances": {"proj_tol": 1e-8, ...}     (optional field overrides)
// }
//
// Real entries may be written as plain numbers instead of [re, im] pairs.

struct ObservableFile {
    std::string name = "observable";
    Matrix entries;
    std::optional<json> tolerance_overrides;
};

ObservableFile parse_observable(const json& j);
ObservableFile read_observable_file(const std::string& path);

json matrix_to_json(const Matrix& m);
json observable_to_json(const Matrix& m, const std::string& name);
void write_observable_file(const std::string& path, const Matrix& m, const std::string& name);

// Apply "tolerances" overrides from a file on top of a base profile.
Tolerances apply_overrides(Tolerances base, const json& overrides);

json tolerances_to_json(const Tolerances& t);

// ── Run reports ───────────────────────────────────────────────────────────

// FNV-1a 64-bit over raw bytes; used to fingerprint inputs in run reports.
std::string fnv1a_hex(const std::string& bytes);

// One digest per CLI invocation: what ran, on which inputs (by content
// hash), what it decided, and every residual behind the decision. The
// wall_time_ms field is the only part allowed to differ between identical
// runs; to_json(false) drops it for byte-identical comparison.
struct RunReport {
    std::string command;
    json inputs = json::array();     // [{"name":…, "hash":…}, …]
    json parameters = json::object();
    json verdicts = json::object();
    json residuals = json::object();
    json counterexamples = json::array();
    json tolerances = json::object();
    double wall_time_ms = 0.0;

    json to_json(bool include_wall_time = true) const;
    std::string to_jsonl(bool include_wall_time = true) const;
};

}  // namespace orthoalg::io
