#include "focklab/sequences.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace focklab {

double AngleRule::angle(std::size_t n) const {
    switch (kind) {
        case Kind::zero: return 0.0;
        case Kind::fixed: return value;
        case Kind::neg_imag: return -0.5 * kPi;
        case Kind::list:
            if (n >= angles.size()) throw std::invalid_argument("angle list shorter than sequence");
            return angles[n];
    }
    return 0.0;
}

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
}

double param(const GalleryParams& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

std::string describe(const std::string& name, double alpha, int n_max, const GalleryParams& p) {
    std::ostringstream os;
    os << name << " alpha=" << alpha << " n_max=" << n_max;
    for (const auto& [k, v] : p) os << ' ' << k << '=' << v;
    return os.str();
}

}  // namespace

PointSeq reference_gamma(double alpha, int n_max, const AngleRule& rule) {
    require_alpha(alpha);
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    std::vector<LogPoint> pts;
    pts.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) pts.push_back({(n + 1) / (2.0 * alpha), rule.angle(n)});
    return PointSeq(std::move(pts), describe("reference", alpha, n_max, {}));
}

std::vector<double> decompose(double alpha, const PointSeq& seq) {
    require_alpha(alpha);
    std::vector<double> d(seq.size());
    for (std::size_t n = 0; n < seq.size(); ++n) d[n] = seq[n].t - (n + 1) / (2.0 * alpha);
    return d;
}

std::vector<double> angles(const PointSeq& seq) {
    std::vector<double> a;
    a.reserve(seq.size());
    for (const auto& p : seq) a.push_back(p.theta);
    return a;
}

PointSeq compose(double alpha, const std::vector<double>& delta, const std::vector<double>& theta) {
    require_alpha(alpha);
    if (delta.size() != theta.size()) throw std::invalid_argument("delta and theta lengths differ");
    std::vector<LogPoint> pts;
    pts.reserve(delta.size());
    for (std::size_t n = 0; n < delta.size(); ++n) {
        double t = (n + 1) / (2.0 * alpha) + delta[n];
        if (n > 0 && t < pts.back().t) throw std::invalid_argument("composed moduli are not nondecreasing");
        pts.push_back({t, theta[n]});
    }
    return PointSeq(std::move(pts), "composed");
}

std::vector<std::string> gallery_names() {
    return {"reference", "two_sided", "gamma2", "critical_shift", "constant_shift", "avdonin_blocks"};
}

PointSeq gallery(const std::string& name, double alpha, int n_max, const GalleryParams& params) {
    require_alpha(alpha);
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    const double u = 1.0 / (2.0 * alpha);
    std::vector<LogPoint> pts;
    if (name == "reference") {
        double th = param(params, "theta", 0.0);
        for (int n = 0; n <= n_max; ++n) pts.push_back({(n + 1) * u, th});
    } else if (name == "two_sided" || name == "gamma2") {
        double a = param(params, "a", alpha);
        if (!(a > 0.0)) throw std::invalid_argument("parameter a must be positive");
        for (int n = (name == "gamma2" ? 0 : 1); n <= n_max; ++n) {
            pts.push_back({n / a, 0.0});
            pts.push_back({n / a, kPi});
        }
    } else if (name == "critical_shift" || name == "constant_shift") {
        double d = name == "critical_shift" ? param(params, "delta", 0.25 / alpha) : param(params, "d", 0.0);
        for (int n = 0; n <= n_max; ++n) pts.push_back({(n + 1) * u + d, 0.0});
    } else if (name == "avdonin_blocks") {
        double amp = param(params, "amplitude", 0.6);
        double block = param(params, "block", 8.0);
        if (!(block >= 1.0) || block != std::floor(block)) throw std::invalid_argument("block length must be a positive integer");
        int L = static_cast<int>(block);
        for (int n = 0; n <= n_max; ++n) {
            double s = ((n / L) % 2 == 0) ? amp : -amp;
            pts.push_back({(n + 1) * u + s, 0.0});
        }
    } else {
        throw std::invalid_argument("unknown gallery sequence: " + name);
    }
    return PointSeq(std::move(pts), describe(name, alpha, n_max, params));
}

PointSeq merge(const PointSeq& a, const PointSeq& b) {
    std::vector<LogPoint> pts(a.points());
    pts.insert(pts.end(), b.begin(), b.end());
    return PointSeq(std::move(pts), "union(" + a.meta() + ", " + b.meta() + ")");
}

PointSeq rotate(const PointSeq& s, double angle) {
    std::vector<LogPoint> pts;
    pts.reserve(s.size());
    for (const auto& p : s) pts.push_back(p.is_origin() ? p : p.rotated(angle));
    return PointSeq(std::move(pts), "rotate(" + s.meta() + ")");
}

PointSeq every_other(const PointSeq& s, std::size_t offset) {
    std::vector<LogPoint> pts;
    for (std::size_t i = offset; i < s.size(); i += 2) pts.push_back(s[i]);
    return PointSeq(std::move(pts), "every_other(" + s.meta() + ")");
}

PointSeq remove_index(const PointSeq& s, std::size_t index) {
    if (index >= s.size()) throw std::out_of_range("index out of range");
    std::vector<LogPoint> pts(s.points());
    pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(index));
    return PointSeq(std::move(pts), s.meta());
}

PointSeq insert_point(const PointSeq& s, const LogPoint& p) {
    std::vector<LogPoint> pts(s.points());
    pts.push_back(p);
    return PointSeq(std::move(pts), s.meta());
}

nlohmann::json to_json(const PointSeq& s, double alpha) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : s) {
        nlohmann::json q;
        if (p.is_origin()) {
            q["t"] = nullptr;
        } else {
            q["t"] = p.t;
        }
        q["theta"] = p.theta;
        pts.push_back(q);
    }
    return {{"alpha", alpha}, {"meta", s.meta()}, {"points", pts}};
}

PointSeq seq_from_json(const nlohmann::json& j, double alpha) {
    if (!j.is_object()) throw std::invalid_argument("sequence must be an object");
    if (j.contains("generator")) {
        if (!j["generator"].is_string()) throw std::invalid_argument("generator must be a string");
        GalleryParams p;
        int n_max = 64;
        if (j.contains("params")) {
            if (!j["params"].is_object()) throw std::invalid_argument("params must be an object");
            for (const auto& [k, v] : j["params"].items()) {
                if (!v.is_number()) throw std::invalid_argument("gallery parameter " + k + " must be numeric");
                if (k == "n_max") {
                    if (!v.is_number_integer()) throw std::invalid_argument("n_max must be an integer");
                    n_max = v.get<int>();
                } else {
                    p[k] = v.get<double>();
                }
            }
        }
        return gallery(j["generator"].get<std::string>(), alpha, n_max, p);
    }
    if (!j.contains("points") || !j["points"].is_array()) throw std::invalid_argument("sequence needs points or generator");
    std::vector<LogPoint> pts;
    for (const auto& q : j["points"]) {
        if (!q.is_object() || !q.contains("t") || !q.contains("theta") || !q["theta"].is_number())
            throw std::invalid_argument("point must have numeric t and theta");
        double t = q["t"].is_null() ? kNegInf : (q["t"].is_number() ? q["t"].get<double>() : throw std::invalid_argument("t must be numeric"));
        pts.push_back({t, q["theta"].get<double>()});
    }
    std::string meta = j.contains("meta") && j["meta"].is_string() ? j["meta"].get<std::string>() : "literal";
    return PointSeq(std::move(pts), meta);
}

}  // namespace focklab
