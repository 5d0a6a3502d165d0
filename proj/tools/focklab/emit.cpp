#include "focklab/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace focklab::cli {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

namespace {

void emit(const nlohmann::json& j, std::string& out, int depth) {
    std::string pad(2 * (depth + 1), ' '), end(2 * depth, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + nlohmann::json(k).dump() + ": ";
                emit(v, out, depth + 1);
            }
            out += "\n" + end + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                emit(j[i], out, depth + 1);
            }
            out += "\n" + end + "]";
            return;
        }
        case nlohmann::json::value_t::number_float: {
            double v = j.get<double>();
            out += std::isfinite(v) ? num(v) : "\"" + num(v) + "\"";
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump_deterministic(const nlohmann::json& j) {
    std::string out;
    emit(j, out, 0);
    out += "\n";
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    if (!f) throw std::runtime_error("write failed for " + path.string());
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXcd& m) {
    std::string s;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) s += ",";
            s += num(m(i, j).real()) + "," + num(m(i, j).imag());
        }
        s += "\n";
    }
    write_text(path, s);
}

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
    s += "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
        s += "\n";
    }
    write_text(path, s);
}

}  // namespace focklab::cli
