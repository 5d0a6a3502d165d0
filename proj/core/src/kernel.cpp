#include "focklab/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <nlohmann/json.hpp>

namespace focklab {

double log_moment(double alpha, int n) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (n < 0) throw std::invalid_argument("negative moment index");
    double m = n + 1.0;
    // int_0^inf e^{(2n+2)t - 2 alpha t^2} dt by completing the square
    double log_outer = m * m / (2.0 * alpha) + 0.5 * std::log(kPi / (8.0 * alpha)) +
                       std::log(std::erfc(-m / std::sqrt(2.0 * alpha)));
    double log_inner = -std::log(2.0 * m);
    double hi = std::max(log_outer, log_inner), lo = std::min(log_outer, log_inner);
    return std::log(2.0 * kPi) + hi + std::log1p(std::exp(lo - hi));
}

KernelTable moments(double alpha, int n_max) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    KernelTable tab;
    tab.alpha = alpha;
    tab.logc.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) tab.logc[n] = log_moment(alpha, n);
    return tab;
}

int table_size_for(double alpha, double t_max) {
    double t = std::max(t_max, 0.0);
    return static_cast<int>(std::ceil(2.0 * alpha * t + 2.0 * std::sqrt(90.0 * alpha) + 8.0));
}

namespace {
double rounded_alpha(double alpha) { return std::round(alpha * 1e12) / 1e12; }
}  // namespace

std::filesystem::path moment_cache_file(const std::filesystem::path& cache_dir, double alpha, int n_max) {
    char name[96];
    std::snprintf(name, sizeof name, "moments_a%.12f_n%d.json", rounded_alpha(alpha), n_max);
    return cache_dir / name;
}

KernelTable moments_cached(double alpha, int n_max, const std::filesystem::path& cache_dir) {
    auto file = moment_cache_file(cache_dir, alpha, n_max);
    {
        std::ifstream in(file);
        if (in) {
            try {
                nlohmann::json j = nlohmann::json::parse(in);
                if (j.at("version").get<int>() == kMomentCacheVersion &&
                    std::abs(j.at("alpha").get<double>() - rounded_alpha(alpha)) <= 1e-12) {
                    auto logc = j.at("logc").get<std::vector<double>>();
                    if (static_cast<int>(logc.size()) == n_max + 1) {
                        KernelTable tab;
                        tab.alpha = alpha;
                        tab.logc = std::move(logc);
                        return tab;
                    }
                }
            } catch (const std::exception&) {
            }
        }
    }
    KernelTable tab = moments(alpha, n_max);
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    if (!ec) {
        auto tmp = file;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            if (out) {
                nlohmann::json j = {{"alpha", rounded_alpha(alpha)}, {"logc", tab.logc}, {"version", kMomentCacheVersion}};
                out << j.dump();
            }
        }
        std::filesystem::rename(tmp, file, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }
    return tab;
}

LogComplex kernel_value(const KernelTable& tab, const LogPoint& z, const LogPoint& w) {
    if (tab.logc.empty()) throw std::out_of_range("kernel table is empty");
    if (z.is_origin() || w.is_origin()) return LogComplex::polar(-tab.logc[0], 0.0);
    double s = z.t + w.t;
    double dphase = z.theta - w.theta;
    LogAccumulator acc;
    double mx = kNegInf;
    for (std::size_t n = 0; n < tab.logc.size(); ++n) {
        double lm = static_cast<double>(n) * s - tab.logc[n];
        if (n > 0 && lm < mx - 45.0) return acc.result();
        mx = std::max(mx, lm);
        acc.add(LogComplex::polar(lm, static_cast<double>(n) * dphase));
    }
    throw std::out_of_range("kernel table too short for the requested points");
}

double log_kernel_diag(const KernelTable& tab, const LogPoint& z) { return kernel_value(tab, z, z).logmag; }

RatioBand band_from_logs(const std::vector<double>& logs) {
    if (logs.empty()) throw std::invalid_argument("empty band");
    RatioBand b;
    double lo = logs[0], hi = logs[0];
    for (std::size_t i = 1; i < logs.size(); ++i) {
        if (logs[i] < lo) {
            lo = logs[i];
            b.argmin = i;
        }
        if (logs[i] > hi) {
            hi = logs[i];
            b.argmax = i;
        }
    }
    b.lo = std::exp(lo);
    b.hi = std::exp(hi);
    return b;
}

RatioBand kernel_estimate_audit(const KernelTable& tab, const std::vector<double>& ts) {
    std::vector<double> logs;
    logs.reserve(ts.size());
    for (double t : ts) {
        double l1p = t > 0.0 ? 2.0 * t + std::log1p(std::exp(-2.0 * t)) : std::log1p(std::exp(2.0 * t));
        double phi = t > 0.0 ? tab.alpha * t * t : 0.0;
        logs.push_back(log_kernel_diag(tab, {t, 0.0}) + l1p - 2.0 * phi);
    }
    return band_from_logs(logs);
}

double log_discrete_norm2(const KernelTable& tab, const PointSeq& seq, const std::vector<LogComplex>& fvals) {
    if (fvals.size() != seq.size()) throw std::invalid_argument("value count differs from sequence length");
    if (seq.empty()) return kNegInf;
    std::vector<double> logs;
    logs.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) logs.push_back(2.0 * fvals[i].logmag - log_kernel_diag(tab, seq[i]));
    return log_sum_exp(logs);
}

}  // namespace focklab
