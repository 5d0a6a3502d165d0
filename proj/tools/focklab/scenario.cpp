#include "focklab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "focklab/baselines.hpp"
#include "focklab/completion.hpp"
#include "focklab/criterion.hpp"
#include "focklab/debranges.hpp"
#include "focklab/density.hpp"
#include "focklab/emit.hpp"
#include "focklab/frames.hpp"
#include "focklab/genfun.hpp"
#include "focklab/kernel.hpp"
#include "focklab/sequences.hpp"

namespace focklab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kTasks{"check", "density", "frames", "interpolate", "debranges", "complete", "thin", "gallery"};

struct TaskFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Params {
public:
    Params(const json& j, std::string where, std::set<std::string> allowed) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw SchemaError(where_ + " must be an object");
        for (const auto& [k, v] : j_.items())
            if (!allowed.count(k)) throw SchemaError("unknown key '" + k + "' in " + where_);
    }

    bool has(const std::string& k) const { return j_.contains(k); }

    int integer(const std::string& k, int fallback, int lo, int hi) const {
        if (!has(k)) return fallback;
        const json& v = j_.at(k);
        if (!v.is_number_integer()) throw SchemaError(where_ + "." + k + " must be an integer");
        long long x = v.get<long long>();
        if (x < lo || x > hi) throw SchemaError(where_ + "." + k + " out of range");
        return static_cast<int>(x);
    }

    double number(const std::string& k, double fallback) const {
        if (!has(k)) return fallback;
        const json& v = j_.at(k);
        if (!v.is_number()) throw SchemaError(where_ + "." + k + " must be a number");
        return v.get<double>();
    }

    std::string string(const std::string& k, const std::string& fallback, const std::vector<std::string>& choices) const {
        if (!has(k)) return fallback;
        const json& v = j_.at(k);
        if (!v.is_string()) throw SchemaError(where_ + "." + k + " must be a string");
        std::string s = v.get<std::string>();
        if (!choices.empty() && std::find(choices.begin(), choices.end(), s) == choices.end())
            throw SchemaError(where_ + "." + k + " has unsupported value '" + s + "'");
        return s;
    }

    std::vector<double> numbers(const std::string& k, std::vector<double> fallback) const {
        if (!has(k)) return fallback;
        const json& v = j_.at(k);
        if (!v.is_array() || v.empty()) throw SchemaError(where_ + "." + k + " must be a nonempty array");
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) throw SchemaError(where_ + "." + k + " must contain numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }

    std::vector<int> integers(const std::string& k, std::vector<int> fallback) const {
        if (!has(k)) return fallback;
        const json& v = j_.at(k);
        if (!v.is_array() || v.empty()) throw SchemaError(where_ + "." + k + " must be a nonempty array");
        std::vector<int> out;
        for (const auto& x : v) {
            if (!x.is_number_integer()) throw SchemaError(where_ + "." + k + " must contain integers");
            out.push_back(x.get<int>());
        }
        return out;
    }

    const json& raw(const std::string& k) const { return j_.at(k); }

private:
    const json& j_;
    std::string where_;
};

struct Scenario {
    double alpha = 0.5;
    std::string task;
    json sequence_cfg;
    json params = json::object();
    std::uint64_t seed = kDefaultSeed;
    fs::path base_dir;
    fs::path out_dir;
    std::string config_hash;
};

json read_json_file(const fs::path& p) {
    std::ifstream f(p);
    if (!f) throw SchemaError("cannot read " + p.string());
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw SchemaError("malformed JSON in " + p.string() + ": " + e.what());
    }
}

Scenario parse_scenario(const RunOptions& opts) {
    json cfg = read_json_file(opts.config);
    Params top(cfg, "config", {"alpha", "sequence", "task", "params", "seed", "out", "description"});
    Scenario s;
    if (!top.has("alpha") || !cfg["alpha"].is_number()) throw SchemaError("config.alpha is required and numeric");
    s.alpha = cfg["alpha"].get<double>();
    if (!(s.alpha > 0.0) || !std::isfinite(s.alpha)) throw SchemaError("config.alpha must be positive");
    if (!top.has("task")) throw SchemaError("config.task is required");
    s.task = top.string("task", "", kTasks);
    if (top.has("params")) {
        if (!cfg["params"].is_object()) throw SchemaError("config.params must be an object");
        s.params = cfg["params"];
    }
    if (top.has("sequence")) {
        s.sequence_cfg = cfg["sequence"];
    } else if (s.task != "gallery") {
        throw SchemaError("config.sequence is required for task " + s.task);
    }
    if (top.has("seed")) {
        const json& v = cfg["seed"];
        if (v.is_number_unsigned()) {
            s.seed = v.get<std::uint64_t>();
        } else if (v.is_string()) {
            try {
                s.seed = parse_seed(v.get<std::string>());
            } catch (const std::exception&) {
                throw SchemaError("config.seed must be a hex string or a nonnegative integer");
            }
        } else {
            throw SchemaError("config.seed must be a hex string or a nonnegative integer");
        }
    }
    if (opts.seed) s.seed = *opts.seed;
    s.base_dir = opts.config.has_parent_path() ? opts.config.parent_path() : fs::path(".");
    if (opts.out_dir) {
        s.out_dir = *opts.out_dir;
    } else if (top.has("out")) {
        if (!cfg["out"].is_string()) throw SchemaError("config.out must be a string");
        s.out_dir = s.base_dir / cfg["out"].get<std::string>();
    } else {
        s.out_dir = "focklab-out";
    }
    json canonical = cfg;
    canonical["seed"] = hex64(s.seed);
    canonical.erase("out");
    s.config_hash = hex64(fnv1a(canonical.dump()));
    return s;
}

PointSeq build_sequence(const Scenario& s, const json& seq_cfg) {
    if (!seq_cfg.is_object()) throw SchemaError("config.sequence must be an object");
    int kinds = static_cast<int>(seq_cfg.contains("generator")) + static_cast<int>(seq_cfg.contains("points")) +
                static_cast<int>(seq_cfg.contains("file"));
    if (kinds != 1) throw SchemaError("config.sequence needs exactly one of generator, points, file");
    try {
        if (seq_cfg.contains("file")) {
            Params p(seq_cfg, "sequence", {"file"});
            fs::path f = s.base_dir / p.string("file", "", {});
            if (!fs::exists(f)) throw SchemaError("sequence file not found: " + f.string());
            return seq_from_json(read_json_file(f), s.alpha);
        }
        if (seq_cfg.contains("generator")) {
            Params p(seq_cfg, "sequence", {"generator", "params"});
            p.string("generator", "", gallery_names());
        } else {
            Params p(seq_cfg, "sequence", {"points", "meta"});
        }
        return seq_from_json(seq_cfg, s.alpha);
    } catch (const SchemaError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("invalid sequence: ") + e.what());
    }
}

KernelTable table_for(double alpha, double t_max) {
    int n = table_size_for(alpha, std::max(t_max, 1.0));
    fs::path dir = cache_directory();
    if (dir.empty()) return moments(alpha, n);
    return moments_cached(alpha, n, dir);
}

double last_t(const PointSeq& s) { return s.size() ? std::max(0.0, s[s.size() - 1].t) : 0.0; }

json band_json(const RatioBand& b) {
    return {{"lo", b.lo}, {"hi", b.hi}, {"spread", b.spread()}, {"argmin", b.argmin}, {"argmax", b.argmax}};
}

json criterion_json(const CriterionReport& r) {
    json prefixes = json::array();
    for (const auto& [len, v] : r.delta_sup_prefixes) prefixes.push_back({{"length", len}, {"delta_sup", v}});
    json perN = json::array();
    for (const auto& w : r.per_N) perN.push_back({{"N", w.N}, {"sup_avg", w.sup_avg}, {"argmax", w.argmax}});
    return {{"verdict", to_string(r.verdict)},
            {"threshold", r.threshold},
            {"separated", r.verdict != Verdict::fail_separation},
            {"d_min", r.d_min},
            {"separation_witness", {r.sep_i, r.sep_j}},
            {"delta_sup", r.delta_sup},
            {"delta_sup_is_surrogate", r.delta_sup_is_surrogate},
            {"delta_sup_prefixes", prefixes},
            {"best_window", {{"N", r.best_N}, {"avg_dev", r.avg_dev}}},
            {"margin", r.margin},
            {"excluded_boundary", r.boundary_cut},
            {"per_N", perN}};
}

void write_windows_csv(const fs::path& dir, const CriterionReport& r) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& w : r.per_N) rows.push_back({std::to_string(w.N), num(w.sup_avg), std::to_string(w.argmax)});
    write_table_csv(dir / "windows.csv", {"N", "sup_avg", "argmax"}, rows);
}

struct TaskOutput {
    json result;
    bool ok = true;
    std::string status;
};

TaskOutput run_check(const Scenario& s, const PointSeq& seq, const json& pj, std::set<std::string> allowed) {
    Params p(pj, "params", std::move(allowed));
    int N_max = p.integer("N_max", 64, 1, 1 << 20);
    CriterionReport r;
    if (p.has("drop")) {
        int drop = p.integer("drop", 0, 0, static_cast<int>(seq.size()) - 1);
        r = check_ci_finfty(seq, s.alpha, N_max, static_cast<std::size_t>(drop));
    } else {
        r = check_riesz_f2(seq, s.alpha, N_max);
    }
    write_windows_csv(s.out_dir, r);
    TaskOutput out;
    out.result = criterion_json(r);
    out.result["space"] = p.has("drop") ? "F_infinity" : "F_2";
    out.ok = r.verdict == Verdict::pass;
    std::ostringstream os;
    os << "verdict=" << to_string(r.verdict) << " margin=" << r.margin;
    out.status = os.str();
    return out;
}

TaskOutput run_density(const Scenario& s, const PointSeq& seq) {
    Params p(s.params, "params", {"logR", "offset_step"});
    std::vector<double> logR = p.numbers("logR", {4, 8, 16});
    double step = p.number("offset_step", 0.5);
    if (!(step > 0.0)) throw SchemaError("params.offset_step must be positive");
    DensityReport d = densities(seq, logR, default_offsets(seq, step));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < d.logR.size(); ++i)
        for (std::size_t j = 0; j < d.offsets.size(); ++j)
            if (d.counts[i][j]) rows.push_back({num(d.logR[i]), num(d.offsets[j]), std::to_string(*d.counts[i][j])});
    write_table_csv(s.out_dir / "annuli.csv", {"logR", "offset", "count"}, rows);
    TaskOutput out;
    out.result = {{"d_minus", d.d_minus}, {"d_plus", d.d_plus}, {"tolerance", d.tolerance}, {"logR", d.logR},
                  {"critical", 2.0 * s.alpha}, {"disk_density", disk_density(seq, logR)}};
    std::ostringstream os;
    os << "d_minus=" << d.d_minus << " d_plus=" << d.d_plus;
    out.status = os.str();
    return out;
}

TaskOutput run_frames(const Scenario& s, const PointSeq& seq) {
    Params p(s.params, "params", {"sizes", "biorth_size", "m_max", "perturb_step", "trials"});
    std::vector<int> sizes = p.integers("sizes", {8, 16, 32, 64});
    while (!sizes.empty() && static_cast<std::size_t>(sizes.back()) > seq.size()) sizes.pop_back();
    if (sizes.empty()) throw TaskFailure("sequence shorter than every requested section");
    double tmax = last_t(seq);
    KernelTable tab = table_for(s.alpha, 2.0 * tmax + 8.0);
    auto trend = riesz_trend(tab, seq, sizes);
    std::vector<std::vector<std::string>> rows;
    json jt = json::array();
    for (const auto& r : trend) {
        rows.push_back({std::to_string(r.size), num(r.lambda_min), num(r.lambda_max), num(r.cond)});
        jt.push_back({{"size", r.size}, {"lambda_min", r.lambda_min}, {"lambda_max", r.lambda_max}, {"cond", r.cond}});
    }
    write_table_csv(s.out_dir / "trend.csv", {"size", "lambda_min", "lambda_max", "cond"}, rows);
    GramSection g = gram_section(tab, seq, 0, static_cast<std::size_t>(sizes.back()));
    write_matrix_csv(s.out_dir / "gram.csv", g.matrix);
    TaskOutput out;
    out.result["trend"] = jt;
    out.result["gram_csv_dimension"] = g.matrix.rows();

    int m_max = p.integer("m_max", 20, 0, 200);
    KernelTable mt = table_for(s.alpha, std::max(2.0 * tmax + 8.0, (m_max + 1) / s.alpha));
    out.result["monomial_sampling"] = band_json(sampling_audit_f2(mt, seq, Monomials{m_max}));
    out.result["baselines"] = {{"kernel_band", {{"lo", baselines::kKernelBandLo}, {"hi", baselines::kKernelBandHi},
                                                {"spread", baselines::kKernelBandSpread}}}};
    std::vector<double> ts;
    for (int i = 0; i <= 400; ++i) ts.push_back(20.0 * i / 400.0);
    out.result["kernel_band"] = band_json(kernel_estimate_audit(table_for(s.alpha, 20.0), ts));

    if (p.has("biorth_size")) {
        int size = p.integer("biorth_size", 0, 1, static_cast<int>(kMaxSection));
        PointSeq lattice = reference_gamma(s.alpha, static_cast<int>(seq.size()) - 1);
        BiorthMatrix b = biorth_matrix(tab, lattice, seq, static_cast<std::size_t>(size));
        DecayFit fit = decay_fit(b);
        out.result["biorth"] = {{"size", size}, {"unbounded", b.unbounded}, {"opnorm2", b.opnorm2},
                                {"decay", {{"C", fit.C}, {"kappa", fit.kappa}}}};
        if (!b.unbounded)
            write_matrix_csv(s.out_dir / "biorth.csv", b.materialized());
        else
            out.status = "biorth flagged unbounded; ";
    }
    if (p.has("perturb_step")) {
        double step = p.number("perturb_step", 0.05);
        if (!(step >= 0.0)) throw SchemaError("params.perturb_step must be nonnegative");
        int trials = p.integer("trials", 20, 1, 10000);
        StabilityReport r = perturbation_stability_audit(mt, seq, step, trials, m_max, s.seed);
        out.result["perturbation"] = {{"step", step}, {"trials", trials}, {"baseline", r.baseline}, {"worst", r.worst},
                                      {"per_trial", r.per_trial}};
    }
    std::ostringstream os;
    os << out.status << "cond(" << trend.back().size << ")=" << trend.back().cond;
    out.status = os.str();
    return out;
}

TaskOutput run_interpolate(const Scenario& s, const PointSeq& seq) {
    Params p(s.params, "params", {"p", "support", "trials", "extra_index"});
    std::string space = "2";
    if (p.has("p")) {
        const json& v = p.raw("p");
        if (v.is_number_integer() && v.get<int>() == 2)
            space = "2";
        else if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "2"))
            space = v.get<std::string>();
        else
            throw SchemaError("params.p must be 2 or \"inf\"");
    }
    int trials = p.integer("trials", 20, 1, 10000);
    int support = p.integer("support", std::max(1, static_cast<int>(seq.size()) / 2), 1, static_cast<int>(seq.size()));
    int extra = p.integer("extra_index", 0, 0, static_cast<int>(seq.size()) - 1);
    PointSeq core_seq = space == "2" ? seq : remove_index(seq, static_cast<std::size_t>(extra));
    Precondition pre = interpolation_precondition(core_seq, s.alpha);
    int N_max = std::max(1, std::min(64, static_cast<int>(core_seq.size()) / 4));
    CriterionReport crit = check_riesz_f2(core_seq, s.alpha, N_max);

    TaskOutput out;
    out.result["p"] = space;
    out.result["precondition"] = {{"separated", pre.separated},
                                  {"bounded", pre.bounded},
                                  {"d_min", pre.d_min},
                                  {"delta_sup", pre.delta_sup},
                                  {"criterion", {{"verdict", to_string(crit.verdict)}, {"N_max", N_max}, {"margin", crit.margin}}},
                                  {"ok", pre.ok() && crit.verdict == Verdict::pass}};
    if (space == "2")
        out.result["baselines"] = {{"f2_constant", baselines::kInterpF2Constant}};
    else
        out.result["baselines"] = {{"finfty_constant", baselines::kInterpFinftyConstant}};
    if (!pre.ok() || crit.verdict != Verdict::pass) {
        out.ok = false;
        out.status = "precondition failed (" + to_string(crit.verdict) + ")";
        return out;
    }
    ControlAudit a;
    if (space == "2") {
        PointSeq grid = reference_gamma(s.alpha, 3 * static_cast<int>(seq.size()) - 1);
        KernelTable tab = table_for(s.alpha, 2.0 * last_t(grid) + 8.0);
        a = f2_control_audit(tab, seq, static_cast<std::size_t>(support), grid, trials, s.seed);
    } else {
        a = finfty_control_audit(s.alpha, seq, static_cast<std::size_t>(support),
                                 log_polar_grid(seq[0].t - 2.0, last_t(seq) + 6.0, 421, 64), trials, s.seed);
    }
    out.result["constant"] = a.constant;
    out.result["lagrange_error"] = a.lagrange_error;
    out.result["ratios"] = a.ratios;
    out.ok = a.lagrange_error <= 1e-8;
    std::ostringstream os;
    os << "constant=" << a.constant << " lagrange_error=" << a.lagrange_error;
    out.status = os.str();
    return out;
}

TaskOutput run_debranges(const Scenario& s, const PointSeq& seq) {
    Params p(s.params, "params", {"m_max", "rays", "polynomials", "degree", "ray_angle"});
    int m_max = p.integer("m_max", 15, 0, 15);
    std::vector<Ray> rays{Ray::full, Ray::positive, Ray::negative};
    if (p.has("rays")) {
        rays.clear();
        const json& v = p.raw("rays");
        if (!v.is_array() || v.empty()) throw SchemaError("params.rays must be a nonempty array");
        for (const auto& r : v) {
            std::string name = r.is_string() ? r.get<std::string>() : "";
            if (name == "full")
                rays.push_back(Ray::full);
            else if (name == "positive")
                rays.push_back(Ray::positive);
            else if (name == "negative")
                rays.push_back(Ray::negative);
            else
                throw SchemaError("params.rays entries must be full, positive or negative");
        }
    }
    int npoly = p.integer("polynomials", 50, 0, 100000);
    int degree = p.integer("degree", 30, 0, 200);
    double angle = p.number("ray_angle", 0.0);
    KernelTable tab = table_for(s.alpha, (m_max + degree + 2) / s.alpha);
    GenFun g(seq, s.alpha);
    TaskOutput out;
    std::vector<std::vector<std::string>> rows;
    json lines = json::object();
    for (Ray r : rays) {
        auto audits = debranges_line_audit(tab, g, m_max, r);
        for (const auto& a : audits)
            rows.push_back({std::to_string(a.m), to_string(r), num(a.quad_value()), num(a.exact_norm()), num(a.ratio())});
        lines[to_string(r)] = band_json(line_band(audits));
    }
    write_table_csv(s.out_dir / "debranges.csv", {"m", "ray", "quad_value", "exact_norm", "ratio"}, rows);
    out.result["line_bands"] = lines;
    std::ostringstream os;
    if (npoly > 0) {
        RatioBand b = halfline_sup_audit(Weight(s.alpha), random_polynomials(s.alpha, npoly, degree, s.seed), angle);
        out.result["halfline_sup"] = band_json(b);
        out.result["baselines"] = {{"halfline_sup_hi", baselines::kHalflineSupHi}};
        os << "halfline_hi=" << b.hi << " ";
    }
    double worst = 0.0;
    for (const auto& [k, v] : lines.items()) worst = std::max(worst, v["spread"].get<double>());
    os << "line_spread=" << worst;
    out.status = os.str();
    return out;
}

TaskOutput run_completion(const Scenario& s, const PointSeq& seq, bool thin) {
    Params p(s.params, "params", {"M", "N", "eta", "min_groups", "N_max"});
    CompletionParams cp;
    cp.M = p.integer("M", cp.M, 1, 1 << 16);
    cp.N = p.integer("N", cp.N, 1, 1 << 16);
    cp.eta = p.number("eta", cp.eta);
    cp.min_groups = p.integer("min_groups", cp.min_groups, 1, 1 << 16);
    int N_max = p.integer("N_max", 64, 1, 1 << 20);
    CompletionResult c = thin ? thin_to_ci(seq, s.alpha, cp) : complete_to_ci(seq, s.alpha, cp);
    write_text(s.out_dir / "sequence.json", dump_deterministic(to_json(c.sequence, s.alpha)));
    write_text(s.out_dir / (thin ? "removed.json" : "added.json"), dump_deterministic(to_json(c.changed, s.alpha)));
    std::vector<std::vector<std::string>> rows;
    for (const auto& w : c.trace)
        rows.push_back({std::to_string(w.group), std::to_string(w.step), w.configuration, num(w.group_sum)});
    write_table_csv(s.out_dir / "walk.csv", {"group", "step", "configuration", "group_sum"}, rows);
    CriterionReport r = check_riesz_f2(c.sequence, s.alpha, N_max);
    TaskOutput out;
    out.result = {{"groups", c.groups},
                  {"bound", c.bound},
                  {"group_sums", c.group_sums},
                  {"min_separation", c.min_separation},
                  {"input_size", seq.size()},
                  {"output_size", c.sequence.size()},
                  {"changed", c.changed.size()},
                  {"check", criterion_json(r)}};
    out.ok = r.verdict == Verdict::pass;
    std::ostringstream os;
    os << (thin ? "removed=" : "added=") << c.changed.size() << " verdict=" << to_string(r.verdict)
       << " margin=" << r.margin;
    out.status = os.str();
    return out;
}

TaskOutput run_gallery(const Scenario& s) {
    Params p(s.params, "params", {"name", "n_max", "params", "then", "N_max", "drop"});
    if (!p.has("name")) throw SchemaError("params.name is required for task gallery");
    std::string name = p.string("name", "", gallery_names());
    int n_max = p.integer("n_max", 64, 0, 1 << 20);
    GalleryParams gp;
    if (p.has("params")) {
        const json& g = p.raw("params");
        if (!g.is_object()) throw SchemaError("params.params must be an object");
        for (const auto& [k, v] : g.items()) {
            if (!v.is_number()) throw SchemaError("gallery parameter " + k + " must be numeric");
            gp[k] = v.get<double>();
        }
    }
    std::string then = p.string("then", "", {"check"});
    PointSeq seq;
    try {
        seq = gallery(name, s.alpha, n_max, gp);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("invalid gallery request: ") + e.what());
    }
    write_text(s.out_dir / "sequence.json", dump_deterministic(to_json(seq, s.alpha)));
    TaskOutput out;
    out.result = {{"name", name}, {"meta", seq.meta()}, {"size", seq.size()}};
    out.status = "generated " + std::to_string(seq.size()) + " points";
    if (then == "check") {
        TaskOutput c = run_check(s, seq, s.params, {"name", "n_max", "params", "then", "N_max", "drop"});
        out.result["check"] = c.result;
        out.ok = c.ok;
        out.status += " " + c.status;
    }
    return out;
}

TaskOutput dispatch(const Scenario& s, json& report) {
    if (s.task == "gallery") return run_gallery(s);
    PointSeq seq = build_sequence(s, s.sequence_cfg);
    report["sequence"] = {{"meta", seq.meta()}, {"size", seq.size()}};
    try {
        if (s.task == "check") return run_check(s, seq, s.params, {"N_max", "drop"});
        if (s.task == "density") return run_density(s, seq);
        if (s.task == "frames") return run_frames(s, seq);
        if (s.task == "interpolate") return run_interpolate(s, seq);
        if (s.task == "debranges") return run_debranges(s, seq);
        if (s.task == "complete") return run_completion(s, seq, false);
        if (s.task == "thin") return run_completion(s, seq, true);
    } catch (const SchemaError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw TaskFailure(e.what());
    } catch (const std::domain_error& e) {
        throw TaskFailure(e.what());
    } catch (const std::out_of_range& e) {
        throw TaskFailure(e.what());
    }
    throw SchemaError("unknown task " + s.task);
}

}  // namespace

std::uint64_t parse_seed(const std::string& hex) {
    std::string h = hex;
    if (h.rfind("0x", 0) == 0 || h.rfind("0X", 0) == 0) h = h.substr(2);
    if (h.empty() || h.size() > 16 || h.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
        throw std::invalid_argument("seed must be a hexadecimal string");
    return std::stoull(h, nullptr, 16);
}

fs::path cache_directory() {
    if (const char* c = std::getenv("FOCKLAB_CACHE"); c && *c) return c;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "focklab";
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "focklab";
    return {};
}

json config_schema() {
    json seq = {{"type", "object"},
                {"description", "exactly one of generator, points, file"},
                {"properties",
                 {{"generator", {{"type", "string"}, {"enum", gallery_names()}}},
                  {"params", {{"type", "object"}, {"additionalProperties", {{"type", "number"}}},
                              {"description", "generator parameters; n_max is an integer"}}},
                  {"points", {{"type", "array"},
                              {"items", {{"type", "object"},
                                         {"required", {"t", "theta"}},
                                         {"properties", {{"t", {{"type", {"number", "null"}}}},
                                                         {"theta", {{"type", "number"}}}}}}}}},
                  {"meta", {{"type", "string"}}},
                  {"file", {{"type", "string"}, {"description", "path relative to the config file"}}}}},
                {"additionalProperties", false}};
    json params = {
        {"check", {"N_max", "drop"}},
        {"density", {"logR", "offset_step"}},
        {"frames", {"sizes", "biorth_size", "m_max", "perturb_step", "trials"}},
        {"interpolate", {"p", "support", "trials", "extra_index"}},
        {"debranges", {"m_max", "rays", "polynomials", "degree", "ray_angle"}},
        {"complete", {"M", "N", "eta", "min_groups", "N_max"}},
        {"thin", {"M", "N", "eta", "min_groups", "N_max"}},
        {"gallery", {"name", "n_max", "params", "then", "N_max", "drop"}},
    };
    return {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
            {"title", "focklab scenario"},
            {"type", "object"},
            {"required", {"alpha", "task"}},
            {"additionalProperties", false},
            {"properties",
             {{"alpha", {{"type", "number"}, {"exclusiveMinimum", 0}}},
              {"task", {{"type", "string"}, {"enum", kTasks}}},
              {"sequence", seq},
              {"params", {{"type", "object"}}},
              {"seed", {{"type", {"string", "integer"}}, {"description", "hexadecimal string or integer"}}},
              {"out", {{"type", "string"}}},
              {"description", {{"type", "string"}}}}},
            {"x-task-params", params},
            {"x-version", kVersion}};
}

RunResult run(const RunOptions& opts) {
    RunResult res;
    Scenario s;
    try {
        s = parse_scenario(opts);
    } catch (const SchemaError& e) {
        res.exit_code = kSchema;
        res.summary = std::string("focklab: schema error: ") + e.what();
        return res;
    } catch (const std::exception& e) {
        res.exit_code = kInternal;
        res.summary = std::string("focklab: internal error: ") + e.what();
        return res;
    }
    json report = {{"version", kVersion}, {"config_hash", s.config_hash}, {"seed", hex64(s.seed)},
                   {"task", s.task},     {"alpha", s.alpha},             {"params", s.params}};
    try {
        fs::create_directories(s.out_dir);
        TaskOutput out = dispatch(s, report);
        report["result"] = out.result;
        report["ok"] = out.ok;
        res.exit_code = out.ok ? kOk : kTaskFailure;
        res.summary = "focklab " + s.task + ": " + (out.ok ? "ok " : "failed ") + out.status;
    } catch (const SchemaError& e) {
        res.exit_code = kSchema;
        res.summary = std::string("focklab: schema error: ") + e.what();
        return res;
    } catch (const TaskFailure& e) {
        report["ok"] = false;
        report["error"] = e.what();
        res.exit_code = kTaskFailure;
        res.summary = std::string("focklab ") + s.task + ": failed " + e.what();
    } catch (const std::exception& e) {
        res.exit_code = kInternal;
        res.summary = std::string("focklab: internal error: ") + e.what();
        return res;
    }
    res.report = report;
    res.report_path = s.out_dir / "report.json";
    try {
        write_text(res.report_path, dump_deterministic(report));
    } catch (const std::exception& e) {
        res.exit_code = kInternal;
        res.summary = std::string("focklab: cannot write report: ") + e.what();
    }
    return res;
}

}  // namespace focklab::cli
