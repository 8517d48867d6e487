#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace duc::cli {

/// Bad or inconsistent arguments; maps to exit code 2.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Everything a run depends on. Serializing it and running the result again
/// reproduces the report byte for byte.
struct RunConfig {
    std::string subcommand;
    std::string builtin;
    std::string map_path;
    std::string gate_path;
    std::string labels = "offset";
    uint64_t seed = 1;
    int64_t max_dim = 6561;
    uint64_t state_cap = uint64_t{1} << 24;
    uint64_t budget = 100'000'000;
    std::string format = "json";
    /// Subcommand parameters, keyed by flag name.
    nlohmann::json params = nlohmann::json::object();

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json &j);
};

struct Report {
    nlohmann::json result = nlohmann::json::object();
    std::vector<std::string> caveats;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
};

Report run(const RunConfig &cfg);

/// JSON envelope {schema, config, result, caveats} or versioned CSV.
std::string render(const RunConfig &cfg, const Report &rep);

/// "a..b", "a..b:step", "a,b,c" or a single integer.
std::vector<int> parse_range(const std::string &text, int default_step);

}  // namespace duc::cli
