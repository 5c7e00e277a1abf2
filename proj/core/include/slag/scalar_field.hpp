#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "slag/polynomial.hpp"

namespace slag {

/// A smooth function R^m → R. Derivatives default to fourth-order central
/// differences with step h = 1e−4·(1 + |x|); analytic fields override them.
class ScalarField {
public:
    virtual ~ScalarField() = default;

    virtual int dim() const = 0;
    virtual double value(const Eigen::VectorXd& x) const = 0;
    virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
    virtual Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;
    virtual double laplacian(const Eigen::VectorXd& x) const { return hessian(x).trace(); }
    virtual bool analytic() const { return false; }

    static double fdStep(const Eigen::VectorXd& x) { return 1e-4 * (1.0 + x.norm()); }
};

using FieldPtr = std::shared_ptr<const ScalarField>;

/// Fourth-order finite differences of any field's values, regardless of overrides.
Eigen::VectorXd fd_gradient(const ScalarField& f, const Eigen::VectorXd& x, double h);
Eigen::MatrixXd fd_hessian(const ScalarField& f, const Eigen::VectorXd& x, double h);

class FunctionField final : public ScalarField {
public:
    FunctionField(int m, std::function<double(const Eigen::VectorXd&)> fn) : m_(m), fn_(std::move(fn)) {}
    int dim() const override { return m_; }
    double value(const Eigen::VectorXd& x) const override { return fn_(x); }

private:
    int m_;
    std::function<double(const Eigen::VectorXd&)> fn_;
};

class PolynomialField final : public ScalarField {
public:
    explicit PolynomialField(Polynomial p);
    int dim() const override { return p_.nvars(); }
    double value(const Eigen::VectorXd& x) const override { return p_(x); }
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override;
    bool analytic() const override { return true; }
    const Polynomial& polynomial() const { return p_; }

private:
    Polynomial p_;
    std::vector<Polynomial> grad_;
    std::vector<std::vector<Polynomial>> hess_;
};

/// c·r^ρ on R^m ∖ {0}.
class RadialPowerField final : public ScalarField {
public:
    RadialPowerField(int m, double rho, double c = 1.0) : m_(m), rho_(rho), c_(c) {}
    int dim() const override { return m_; }
    double value(const Eigen::VectorXd& x) const override;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override;
    bool analytic() const override { return true; }

private:
    int m_;
    double rho_, c_;
};

enum class InversionDirection { Forward, Backward };

/// r^{2−m}·F(x/r²); the map is an involution, so both directions share the formula.
/// Derivatives are analytic (chain rule) when F is analytic.
class InvertedField final : public ScalarField {
public:
    InvertedField(FieldPtr inner, InversionDirection dir);
    int dim() const override { return inner_->dim(); }
    double value(const Eigen::VectorXd& x) const override;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override;
    bool analytic() const override { return inner_->analytic(); }
    InversionDirection direction() const { return dir_; }

private:
    FieldPtr inner_;
    InversionDirection dir_;
};

FieldPtr inversion_transform(FieldPtr f, int m, InversionDirection dir);

}  // namespace slag
