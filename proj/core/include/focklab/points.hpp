#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "focklab/numerics.hpp"

namespace focklab {

// z = exp(t + i theta); t = -inf is the origin.
struct LogPoint {
    double t = 0.0;
    double theta = 0.0;

    static LogPoint origin() { return {kNegInf, 0.0}; }
    static LogPoint from_complex(std::complex<double> z);
    bool is_origin() const { return t == kNegInf; }
    std::complex<double> to_complex() const;
    LogComplex as_log() const;
    LogPoint rotated(double angle) const { return {t, theta + angle}; }
};

bool same_point(const LogPoint& a, const LogPoint& b);

// z - w in log form without overflow.
LogComplex difference(const LogPoint& z, const LogPoint& w);
double log_abs_difference(const LogPoint& z, const LogPoint& w);

// Points ordered by nondecreasing modulus, then by wrapped angle.
class PointSeq {
public:
    PointSeq() = default;
    explicit PointSeq(std::vector<LogPoint> pts, std::string meta = {});

    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const LogPoint& operator[](std::size_t i) const { return pts_[i]; }
    const std::vector<LogPoint>& points() const { return pts_; }
    const std::string& meta() const { return meta_; }
    void set_meta(std::string m) { meta_ = std::move(m); }

    auto begin() const { return pts_.begin(); }
    auto end() const { return pts_.end(); }

private:
    std::vector<LogPoint> pts_;
    std::string meta_;
};

}  // namespace focklab
