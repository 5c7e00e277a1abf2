#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "slag/cm_geometry.hpp"

namespace slag::test {

using Rng = std::mt19937_64;

inline Rng rng(std::uint64_t salt) { return Rng(0x5eedULL * 1000003ULL + salt); }

inline RVector sphere_point(Rng& g, int m) {
    std::normal_distribution<double> n(0.0, 1.0);
    RVector x(m);
    for (int i = 0; i < m; ++i) x(i) = n(g);
    return x / x.norm();
}

inline std::vector<double> neck_parameters(Rng& g, int m, double lo = 0.25, double hi = 4.0) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    std::vector<double> a(static_cast<std::size_t>(m));
    for (double& v : a) v = std::exp(u(g));
    return a;
}

inline CMatrix unitary(Rng& g, int m) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix z(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) z(i, j) = Complex(n(g), n(g));
    Eigen::HouseholderQR<CMatrix> qr(z);
    return qr.householderQ() * CMatrix::Identity(m, m);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace slag::test
