#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "focklab/genfun.hpp"
#include "focklab/kernel.hpp"

namespace focklab {

enum class Ray { positive, negative, full };
std::string to_string(Ray r);

struct LineAudit {
    Ray ray = Ray::full;
    int m = 0;
    double log_quad_value = 0.0;
    double log_exact_norm = 0.0;
    double quad_value() const;
    double exact_norm() const;
    double ratio() const;
};

// int x^{2m}/|G(x)|^2 dx over the ray, for m = 0..m_max, times scale^2.
std::vector<LineAudit> debranges_line_audit(const KernelTable& tab, const GenFun& g, int m_max, Ray ray,
                                            double scale = 1.0);

RatioBand line_band(const std::vector<LineAudit>& audits);

struct Polynomial {
    std::vector<LogComplex> coeffs;
};

LogComplex eval_poly(const Polynomial& p, const LogPoint& z);
Polynomial rotate_poly(const Polynomial& p, double angle);  // z -> p(z e^{-i angle})

// Coefficients b_k / sqrt(c_k) with b_k standard complex normal.
std::vector<Polynomial> random_polynomials(double alpha, int count, int degree, std::uint64_t seed = kDefaultSeed);

struct SupGrid {
    double t_lo = 0.0;
    double t_hi = 20.0;
    int n_t = 401;
    int n_theta = 256;
};

double halfline_sup_ratio(const Weight& w, const Polynomial& p, double ray_angle, const SupGrid& grid);

// Band over polynomials of plane grid-sup over ray grid-sup of |f| e^{-phi}.
RatioBand halfline_sup_audit(const Weight& w, const std::vector<Polynomial>& polys, double ray_angle,
                             const SupGrid& grid = {});

}  // namespace focklab
