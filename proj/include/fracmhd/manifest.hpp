#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracmhd/scheme.hpp"

namespace fracmhd {

// `key = value` text manifest, '#' comments. Keys are validated per command
// and every numeric parameter is range-checked before any computation runs.
struct Manifest {
    std::string command;  // run-scheme | check-inequalities | verify-uniqueness | norms
    std::vector<std::pair<std::string, std::string>> entries;  // insertion order kept
    std::string output_dir = ".";
    std::uint64_t seed = 0;

    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback = "") const;
    double get_num(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
};

struct ManifestError {
    int line = 0;  // 0 when not tied to a line
    std::string message;
};

struct ParseResult {
    std::optional<Manifest> manifest;
    std::vector<ManifestError> errors;
    bool ok() const { return manifest.has_value() && errors.empty(); }
};

// Parses and validates; `command` (from the CLI) may be overridden by a
// `command` key in the text, in which case the two must agree.
ParseResult parse_manifest(const std::string& text, const std::string& command);

std::string serialize_manifest(const Manifest& m);

bool operator==(const Manifest& a, const Manifest& b);

// Typed views over a validated manifest (defaults applied here).
SchemeConfig scheme_config_from(const Manifest& m);

}  // namespace fracmhd
