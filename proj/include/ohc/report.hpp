#pragma once

#include "ohc/absorption.hpp"
#include "ohc/conditions.hpp"
#include "ohc/extremal.hpp"
#include "ohc/hamilton.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ohc {

using Json = nlohmann::json;

inline constexpr std::string_view kSchema = "ohc-report/1";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// {num, den}; +infinity is {1, 0}.
Json rational_json(const std::optional<Rational>& r);

Json condition_json(const ConditionReport& r);
Json params_json(const ExtremalParams& p);
Json partition_json(const Partition4& p);
/// Reads {"A": [...], "B": [...], "C": [...], "D": [...]} (missing classes are empty).
Partition4 partition_from_json(const Json& j, std::size_t n);
Json extremality_json(const ExtremalityReport& r);
Json result_json(const HamiltonResult& r);
Json profile_json(const std::vector<ProfileEntry>& profile);
Json path_json(const DiPath& p);

/// Everything that determines a command's output.
struct RunManifest {
    std::string command;
    std::string input_digest;  // FNV-1a 64 of the input bytes, hex; empty if none
    std::uint64_t seed = 0;
    Json params = Json::object();
    std::string tool_version{kToolVersion};
    std::string timestamp = "unset";
};

Json manifest_json(const RunManifest& m);

/// Hex FNV-1a 64 digest.
std::string digest(std::string_view bytes);

/// `--timestamp` value if given, else SOURCE_DATE_EPOCH, else "unset".
std::string manifest_timestamp(const std::optional<std::string>& flag);

/// Wraps a payload as {"schema", "manifest", "result"} and serialises it with
/// sorted keys and a trailing newline.
std::string emit_report(const RunManifest& m, const Json& result);

}  // namespace ohc
