#include "slag/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "slag/errors.hpp"

namespace slag {

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    Eigen::VectorXd value, error;
};

Segment evaluate(const VectorIntegrand& f, int dim, double a, double b, Eigen::VectorXd& buf) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Eigen::VectorXd kron = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd gauss = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd absSum = Eigen::VectorXd::Zero(dim);

    f(c, buf);
    kron += kWgk[7] * buf;
    gauss += kWg[3] * buf;
    absSum += kWgk[7] * buf.cwiseAbs();
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        for (double x : {c - dx, c + dx}) {
            f(x, buf);
            kron += kWgk[j] * buf;
            absSum += kWgk[j] * buf.cwiseAbs();
            if (j % 2 == 1) gauss += kWg[j / 2] * buf;
        }
    }
    Segment s{a, b, kron * h, Eigen::VectorXd(dim)};
    const double eps = std::numeric_limits<double>::epsilon();
    for (int i = 0; i < dim; ++i) {
        const double raw = std::abs((kron(i) - gauss(i)) * h);
        const double floor = 50.0 * eps * std::abs(absSum(i) * h);
        s.error(i) = raw > floor ? raw : 0.0;
    }
    return s;
}

}  // namespace

QuadratureResult gauss_kronrod(const VectorIntegrand& f, int dim, double a, double b,
                               const QuadratureOptions& opts) {
    QuadratureResult out;
    out.value = Eigen::VectorXd::Zero(dim);
    out.error = Eigen::VectorXd::Zero(dim);
    if (a == b) return out;

    Eigen::VectorXd buf(dim);
    std::vector<Segment> segs;
    segs.push_back(evaluate(f, dim, a, b, buf));

    for (;;) {
        Eigen::VectorXd total = Eigen::VectorXd::Zero(dim), err = Eigen::VectorXd::Zero(dim);
        for (const auto& s : segs) {
            total += s.value;
            err += s.error;
        }
        Eigen::VectorXd tol(dim);
        bool done = true;
        for (int i = 0; i < dim; ++i) {
            tol(i) = std::max(opts.absTol, opts.relTol * std::abs(total(i)));
            if (err(i) > tol(i)) done = false;
        }
        if (done || static_cast<int>(segs.size()) >= opts.maxIntervals) {
            out.value = total;
            out.error = err;
            out.intervals = static_cast<int>(segs.size());
            if (!done) {
                double worst = 0.0;
                for (int i = 0; i < dim; ++i) worst = std::max(worst, err(i) / tol(i));
                throw ConvergenceError("quadrature non-convergence", worst);
            }
            return out;
        }

        std::size_t pick = 0;
        double badness = -1.0;
        for (std::size_t j = 0; j < segs.size(); ++j) {
            double bj = 0.0;
            for (int i = 0; i < dim; ++i) bj = std::max(bj, segs[j].error(i) / tol(i));
            if (bj > badness) {
                badness = bj;
                pick = j;
            }
        }
        const Segment s = segs[pick];
        const double mid = 0.5 * (s.a + s.b);
        if (!(mid > s.a && mid < s.b)) throw ConvergenceError("quadrature interval underflow", badness);
        segs[pick] = evaluate(f, dim, s.a, mid, buf);
        segs.push_back(evaluate(f, dim, mid, s.b, buf));
    }
}

double gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     const QuadratureOptions& opts) {
    auto vf = [&f](double x, Eigen::Ref<Eigen::VectorXd> out) { out(0) = f(x); };
    return gauss_kronrod(vf, 1, a, b, opts).value(0);
}

}  // namespace slag
