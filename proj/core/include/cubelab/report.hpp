#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace cubelab {

inline constexpr const char* kToolName = "cubelab";
inline constexpr const char* kToolVersion = "0.1.0";

// Standard report envelope: tool version, config echo, timestamps, payload,
// provenance (cache statistics, truncation constants).  Every numeric result
// travels with its parameters.
nlohmann::json make_envelope(const nlohmann::json& config);
void finalize_envelope(nlohmann::json& envelope, nlohmann::json payload);

// CSV with a fixed column contract; values rendered with max precision.
std::string to_csv(const std::vector<std::string>& columns,
                   const std::vector<std::vector<std::string>>& rows);

}  // namespace cubelab
