#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "rmopt/qstate.hpp"
#include "rmopt/rm_core.hpp"

namespace rmopt::io {

/// Malformed input file (syntax, missing or unknown keys).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key/value configuration: one `key = value` per line, `#` starts a
// comment. Keys not present keep the value already in `base`.
RmConfig parse_config(std::istream& in, RmConfig base);
RmConfig load_config(const std::filesystem::path& path, RmConfig base);
nlohmann::json config_to_json(const RmConfig& config);

// {"n_qubits": n, "amplitudes": [[re, im], ...]}
nlohmann::json to_json(const quantum::PureState& psi);
quantum::PureState pure_state_from_json(const nlohmann::json& j);

// {"dim_a": a, "dim_b": b, "rows": [[[re, im], ...], ...]}
nlohmann::json to_json(const quantum::DensityMatrix& rho);
quantum::DensityMatrix density_matrix_from_json(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);
/// Pretty-printed JSON plus a trailing newline.
void write_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace rmopt::io
