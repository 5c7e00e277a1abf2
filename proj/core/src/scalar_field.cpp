#include "slag/scalar_field.hpp"

#include <cmath>

#include "slag/errors.hpp"

namespace slag {

Eigen::VectorXd fd_gradient(const ScalarField& f, const Eigen::VectorXd& x, double h) {
    const int m = f.dim();
    Eigen::VectorXd g(m);
    for (int i = 0; i < m; ++i) {
        auto at = [&](double s) {
            Eigen::VectorXd y = x;
            y(i) += s * h;
            return f.value(y);
        };
        g(i) = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
    }
    return g;
}

Eigen::MatrixXd fd_hessian(const ScalarField& f, const Eigen::VectorXd& x, double h) {
    const int m = f.dim();
    Eigen::MatrixXd H(m, m);
    const double f0 = f.value(x);
    for (int i = 0; i < m; ++i) {
        auto at = [&](double s) {
            Eigen::VectorXd y = x;
            y(i) += s * h;
            return f.value(y);
        };
        H(i, i) = (-at(2) + 16.0 * at(1) - 30.0 * f0 + 16.0 * at(-1) - at(-2)) / (12.0 * h * h);
        for (int j = 0; j < i; ++j) {
            auto cross = [&](double k) {
                auto v = [&](double si, double sj) {
                    Eigen::VectorXd y = x;
                    y(i) += si * k * h;
                    y(j) += sj * k * h;
                    return f.value(y);
                };
                return v(1, 1) - v(1, -1) - v(-1, 1) + v(-1, -1);
            };
            H(i, j) = H(j, i) = (16.0 * cross(1) - cross(2)) / (48.0 * h * h);
        }
    }
    return H;
}

Eigen::VectorXd ScalarField::gradient(const Eigen::VectorXd& x) const { return fd_gradient(*this, x, fdStep(x)); }

Eigen::MatrixXd ScalarField::hessian(const Eigen::VectorXd& x) const { return fd_hessian(*this, x, fdStep(x)); }

PolynomialField::PolynomialField(Polynomial p) : p_(std::move(p)) {
    const int m = p_.nvars();
    for (int i = 0; i < m; ++i) grad_.push_back(p_.derivative(i));
    hess_.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) hess_[static_cast<std::size_t>(i)].push_back(grad_[static_cast<std::size_t>(i)].derivative(j));
}

Eigen::VectorXd PolynomialField::gradient(const Eigen::VectorXd& x) const {
    Eigen::VectorXd g(dim());
    for (int i = 0; i < dim(); ++i) g(i) = grad_[static_cast<std::size_t>(i)](x);
    return g;
}

Eigen::MatrixXd PolynomialField::hessian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd H(dim(), dim());
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) H(i, j) = hess_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](x);
    return H;
}

namespace {

double radiusOrThrow(const Eigen::VectorXd& x) {
    const double r = x.norm();
    if (r == 0.0) throw GeometryError("field evaluated at the excluded origin");
    return r;
}

}  // namespace

double RadialPowerField::value(const Eigen::VectorXd& x) const { return c_ * std::pow(radiusOrThrow(x), rho_); }

Eigen::VectorXd RadialPowerField::gradient(const Eigen::VectorXd& x) const {
    const double r = radiusOrThrow(x);
    return c_ * rho_ * std::pow(r, rho_ - 2.0) * x;
}

Eigen::MatrixXd RadialPowerField::hessian(const Eigen::VectorXd& x) const {
    const double r = radiusOrThrow(x);
    const double s = c_ * rho_ * std::pow(r, rho_ - 2.0);
    return s * (Eigen::MatrixXd::Identity(m_, m_) + (rho_ - 2.0) / (r * r) * x * x.transpose());
}

InvertedField::InvertedField(FieldPtr inner, InversionDirection dir) : inner_(std::move(inner)), dir_(dir) {}

double InvertedField::value(const Eigen::VectorXd& x) const {
    const double r = radiusOrThrow(x);
    const int m = dim();
    return std::pow(r, 2.0 - m) * inner_->value(x / (r * r));
}

Eigen::VectorXd InvertedField::gradient(const Eigen::VectorXd& x) const {
    if (!inner_->analytic()) return ScalarField::gradient(x);
    const double r = radiusOrThrow(x);
    const int m = dim();
    const double r2 = r * r;
    const Eigen::VectorXd u = x / r2;
    const double rho = std::pow(r, 2.0 - m);
    const Eigen::VectorXd drho = (2.0 - m) * std::pow(r, -m) * x;
    // J_ai = ∂u_a/∂x_i = δ_ai/r² − 2x_a x_i/r⁴ (symmetric)
    const Eigen::MatrixXd J = Eigen::MatrixXd::Identity(m, m) / r2 - 2.0 / (r2 * r2) * x * x.transpose();
    return drho * inner_->value(u) + rho * J * inner_->gradient(u);
}

Eigen::MatrixXd InvertedField::hessian(const Eigen::VectorXd& x) const {
    if (!inner_->analytic()) return ScalarField::hessian(x);
    const double r = radiusOrThrow(x);
    const int m = dim();
    const double r2 = r * r, r4 = r2 * r2;
    const Eigen::VectorXd u = x / r2;
    const double F = inner_->value(u);
    const Eigen::VectorXd gF = inner_->gradient(u);
    const Eigen::MatrixXd hF = inner_->hessian(u);

    const double rho = std::pow(r, 2.0 - m);
    const Eigen::VectorXd drho = (2.0 - m) * std::pow(r, -m) * x;
    const Eigen::MatrixXd ddrho =
        (2.0 - m) * std::pow(r, -m) * (Eigen::MatrixXd::Identity(m, m) - m / r2 * x * x.transpose());
    const Eigen::MatrixXd J = Eigen::MatrixXd::Identity(m, m) / r2 - 2.0 / r4 * x * x.transpose();
    const Eigen::VectorXd Jg = J * gF;  // (Σ_a F_a J_ai)_i

    // Σ_a F_a ∂_ij u_a with ∂_ij u_a = −2(δ_ai x_j + δ_aj x_i + δ_ij x_a)/r⁴ + 8x_a x_i x_j/r⁶
    const double xg = x.dot(gF);
    Eigen::MatrixXd second = -2.0 / r4 * (gF * x.transpose() + x * gF.transpose() + xg * Eigen::MatrixXd::Identity(m, m));
    second += 8.0 * xg / (r4 * r2) * x * x.transpose();

    return ddrho * F + drho * Jg.transpose() + Jg * drho.transpose() + rho * (J * hF * J + second);
}

FieldPtr inversion_transform(FieldPtr f, int m, InversionDirection dir) {
    if (!f) throw PreconditionError("inversion_transform needs a field");
    if (f->dim() != m) throw PreconditionError("field dimension differs from m");
    return std::make_shared<InvertedField>(std::move(f), dir);
}

}  // namespace slag
