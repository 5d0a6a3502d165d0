#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "focklab/points.hpp"

namespace focklab {

struct AngleRule {
    enum class Kind { zero, fixed, neg_imag, list };
    Kind kind = Kind::zero;
    double value = 0.0;
    std::vector<double> angles;

    static AngleRule zero() { return {}; }
    static AngleRule fixed(double a) { return {Kind::fixed, a, {}}; }
    static AngleRule neg_imag() { return {Kind::neg_imag, 0.0, {}}; }
    static AngleRule list(std::vector<double> a) { return {Kind::list, 0.0, std::move(a)}; }
    double angle(std::size_t n) const;
};

// gamma_n = exp((n+1)/(2 alpha) + i theta_n), n = 0..n_max
PointSeq reference_gamma(double alpha, int n_max, const AngleRule& rule = AngleRule::zero());

// delta_n = t_n - (n+1)/(2 alpha)
std::vector<double> decompose(double alpha, const PointSeq& seq);
std::vector<double> angles(const PointSeq& seq);
PointSeq compose(double alpha, const std::vector<double>& delta, const std::vector<double>& theta);

using GalleryParams = std::map<std::string, double>;

// reference, two_sided, gamma2, critical_shift, constant_shift, avdonin_blocks
PointSeq gallery(const std::string& name, double alpha, int n_max, const GalleryParams& params = {});
std::vector<std::string> gallery_names();

PointSeq merge(const PointSeq& a, const PointSeq& b);
PointSeq rotate(const PointSeq& s, double angle);
PointSeq every_other(const PointSeq& s, std::size_t offset = 0);
PointSeq remove_index(const PointSeq& s, std::size_t index);
PointSeq insert_point(const PointSeq& s, const LogPoint& p);

nlohmann::json to_json(const PointSeq& s, double alpha);
PointSeq seq_from_json(const nlohmann::json& j, double alpha);

}  // namespace focklab
