#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace focklab::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kInternal = 1, kSchema = 2, kTaskFailure = 3 };

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::filesystem::path config;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

struct RunResult {
    int exit_code = kOk;
    nlohmann::json report;
    std::string summary;
    std::filesystem::path report_path;
};

nlohmann::json config_schema();

std::uint64_t parse_seed(const std::string& hex);

std::filesystem::path cache_directory();

// Parses, validates, executes, and writes the report. Never throws.
RunResult run(const RunOptions& opts);

}  // namespace focklab::cli
