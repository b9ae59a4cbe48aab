#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace levyconv {

// Element of the model space E = (R^n, l^r). The norm exponent travels with
// the vector; mixing vectors from different spaces is a logic error.
struct ModelVector {
    std::vector<double> coeffs;
    double norm_exponent = 2.0;

    ModelVector() = default;
    ModelVector(std::vector<double> c, double r) : coeffs(std::move(c)), norm_exponent(r) {
        if (norm_exponent < 1.0) throw std::domain_error("ModelVector: norm exponent must be >= 1");
    }

    static ModelVector zero(std::size_t n, double r) {
        return ModelVector(std::vector<double>(n, 0.0), r);
    }

    std::size_t dim() const { return coeffs.size(); }

    double e_norm() const {
        const double r = norm_exponent;
        if (r == 2.0) {
            double s = 0.0;
            for (double v : coeffs) s += v * v;
            return std::sqrt(s);
        }
        if (r == 1.0) {
            double s = 0.0;
            for (double v : coeffs) s += std::fabs(v);
            return s;
        }
        double vmax = 0.0;
        for (double v : coeffs) vmax = std::max(vmax, std::fabs(v));
        if (vmax == 0.0) return 0.0;
        double s = 0.0;
        for (double v : coeffs) s += std::pow(std::fabs(v) / vmax, r);
        return vmax * std::pow(s, 1.0 / r);
    }

    bool all_finite() const {
        for (double v : coeffs)
            if (!std::isfinite(v)) return false;
        return true;
    }

    ModelVector& operator+=(const ModelVector& o) {
        check_compatible(o);
        for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += o.coeffs[k];
        return *this;
    }
    ModelVector& operator-=(const ModelVector& o) {
        check_compatible(o);
        for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] -= o.coeffs[k];
        return *this;
    }
    ModelVector& operator*=(double c) {
        for (double& v : coeffs) v *= c;
        return *this;
    }

    friend ModelVector operator+(ModelVector a, const ModelVector& b) { return a += b; }
    friend ModelVector operator-(ModelVector a, const ModelVector& b) { return a -= b; }
    friend ModelVector operator*(double c, ModelVector a) { return a *= c; }

    void axpy(double a, const ModelVector& x) {
        check_compatible(x);
        for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += a * x.coeffs[k];
    }

private:
    void check_compatible(const ModelVector& o) const {
        if (o.coeffs.size() != coeffs.size() || o.norm_exponent != norm_exponent)
            throw std::invalid_argument("ModelVector: incompatible operands");
    }
};

}  // namespace levyconv
