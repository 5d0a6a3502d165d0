#pragma once

#include <cstddef>

#include "focklab/points.hpp"

namespace focklab {

// phi(r) = alpha (log+ r)^2
class Weight {
public:
    explicit Weight(double alpha);
    double alpha() const { return alpha_; }
    double phi(double t) const;
    double phi(const LogPoint& z) const { return phi(z.t); }

private:
    double alpha_;
};

struct DRho {
    double value = 0.0;
    bool saturated = false;
};

DRho d_rho_flagged(const Weight& w, const LogPoint& z, const LogPoint& v);
double d_rho(const Weight& w, const LogPoint& z, const LogPoint& v);

struct Separation {
    double d_min = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    bool separated = true;
};

Separation is_separated(const Weight& w, const PointSeq& seq);

}  // namespace focklab
