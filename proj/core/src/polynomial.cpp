#include "slag/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "slag/errors.hpp"

namespace slag {

Polynomial Polynomial::constant(int nvars, double c) {
    Polynomial p(nvars);
    p.addTerm(Exponent(static_cast<std::size_t>(nvars), 0), c);
    return p;
}

Polynomial Polynomial::monomial(const Exponent& e, double c) {
    Polynomial p(static_cast<int>(e.size()));
    p.addTerm(e, c);
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int v : e) s += v;
        d = std::max(d, s);
    }
    return d;
}

bool Polynomial::isHomogeneous(int k) const {
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int v : e) s += v;
        if (s != k) return false;
    }
    return true;
}

void Polynomial::addTerm(const Exponent& e, double c) {
    if (static_cast<int>(e.size()) != nvars_) throw PreconditionError("exponent length differs from variable count");
    if (c == 0.0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
}

double Polynomial::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::operator()(const Eigen::VectorXd& x) const {
    if (x.size() != nvars_) throw PreconditionError("point dimension differs from variable count");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c;
        for (int i = 0; i < nvars_; ++i) {
            const int p = e[static_cast<std::size_t>(i)];
            for (int r = 0; r < p; ++r) t *= x(i);
        }
        sum += t;
    }
    return sum;
}

Polynomial Polynomial::derivative(int i) const {
    Polynomial d(nvars_);
    for (const auto& [e, c] : terms_) {
        const int p = e[static_cast<std::size_t>(i)];
        if (p == 0) continue;
        Exponent f = e;
        f[static_cast<std::size_t>(i)] -= 1;
        d.addTerm(f, c * p);
    }
    return d;
}

Polynomial Polynomial::laplacian() const {
    Polynomial l(nvars_);
    for (int i = 0; i < nvars_; ++i) l += derivative(i).derivative(i);
    return l;
}

Polynomial Polynomial::timesMonomial(const Exponent& e) const {
    Polynomial out(nvars_);
    for (const auto& [f, c] : terms_) {
        Exponent g = f;
        for (int i = 0; i < nvars_; ++i) g[static_cast<std::size_t>(i)] += e[static_cast<std::size_t>(i)];
        out.addTerm(g, c);
    }
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw PreconditionError("polynomials have different variable counts");
    for (const auto& [e, c] : o.terms_) addTerm(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw PreconditionError("polynomials have different variable counts");
    for (const auto& [e, c] : o.terms_) addTerm(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : o.terms_) {
        Polynomial t = timesMonomial(e);
        t *= c;
        out += t;
    }
    return out;
}

void Polynomial::prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= tol) it = terms_.erase(it);
        else ++it;
    }
}

std::string Polynomial::toString() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (int i = 0; i < nvars_; ++i) {
            const int p = e[static_cast<std::size_t>(i)];
            if (p == 0) continue;
            os << "*x" << (i + 1);
            if (p > 1) os << "^" << p;
        }
    }
    return os.str();
}

std::vector<Exponent> monomials_of_degree(int m, int k) {
    std::vector<Exponent> out;
    Exponent e(static_cast<std::size_t>(m), 0);
    // Recursive composition of k into m non-negative parts.
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == m - 1) {
            e[static_cast<std::size_t>(i)] = left;
            out.push_back(e);
            return;
        }
        for (int v = left; v >= 0; --v) {
            e[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, left - v);
        }
    };
    if (m > 0 && k >= 0) rec(rec, 0, k);
    return out;
}

}  // namespace slag
