#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace focklab::cli {

// Sorted keys, floats as %.12e, non-finite floats as strings.
std::string dump_deterministic(const nlohmann::json& j);

std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t v);

void write_text(const std::filesystem::path& path, const std::string& text);

// One row per matrix row, columns re_0, im_0, re_1, im_1, ...
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXcd& m);

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

std::string num(double v);

}  // namespace focklab::cli
