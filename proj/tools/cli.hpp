#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cfnl::cli {

inline constexpr int schema_version = 1;

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_identity_failure = 3;

struct RunConfig {
    std::string command;
    unsigned n_lo = 0;
    unsigned n_hi = 0;
    std::optional<std::uint64_t> modulus;
    std::optional<std::uint32_t> alpha;
    std::string format = "json";
    std::string out;
    double tolerance_scale = 1.0;
    double etk_c = 1.0;
    std::string h_policy = "quarter";  // or a positive integer
    std::string cache_dir;
    bool no_cache = false;
    std::uint64_t seed = 1;
    std::uint32_t l = 0;
    std::size_t samples = 10000;
    std::vector<std::string> suites;
    std::string table;   // export target
    std::string input;   // compare-gauss source file

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::ordered_json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Parses "a..b" or "a".
std::pair<unsigned, unsigned> parse_range(const std::string& text);

/// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfnl::cli
