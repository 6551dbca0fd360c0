#include "cubelab/report.hpp"

#include <chrono>
#include <sstream>

#include "cubelab/cache.hpp"

namespace cubelab {

namespace {
std::string now_iso8601() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}
}  // namespace

nlohmann::json make_envelope(const nlohmann::json& config) {
    nlohmann::json env;
    env["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    env["config"] = config;
    env["started_at"] = now_iso8601();
    return env;
}

void finalize_envelope(nlohmann::json& envelope, nlohmann::json payload) {
    envelope["finished_at"] = now_iso8601();
    envelope["provenance"] = {{"cache_hits", DiskCache::hits()},
                              {"cache_misses", DiskCache::misses()},
                              {"cache_dir", DiskCache::global().dir()}};
    envelope["payload"] = std::move(payload);
}

std::string to_csv(const std::vector<std::string>& columns,
                   const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "\n");
    return os.str();
}

}  // namespace cubelab
