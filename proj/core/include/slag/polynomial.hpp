#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace slag {

using Exponent = std::vector<int>;

/// Sparse real polynomial in m variables, stored as exponent → coefficient.
class Polynomial {
public:
    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(int nvars, double c);
    static Polynomial monomial(const Exponent& e, double c = 1.0);

    int nvars() const { return nvars_; }
    const std::map<Exponent, double>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    int degree() const;  // −1 for the zero polynomial
    bool isHomogeneous(int k) const;

    void addTerm(const Exponent& e, double c);
    double coefficient(const Exponent& e) const;

    double operator()(const Eigen::VectorXd& x) const;
    Polynomial derivative(int i) const;
    Polynomial laplacian() const;
    /// Multiplies by x^e.
    Polynomial timesMonomial(const Exponent& e) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(double s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(double s, Polynomial p) { return p *= s; }
    Polynomial operator*(const Polynomial& o) const;

    /// Drops coefficients with |c| <= tol.
    void prune(double tol = 0.0);
    std::string toString() const;

private:
    int nvars_;
    std::map<Exponent, double> terms_;
};

/// All exponent vectors of total degree k in m variables (lexicographic).
std::vector<Exponent> monomials_of_degree(int m, int k);

}  // namespace slag
