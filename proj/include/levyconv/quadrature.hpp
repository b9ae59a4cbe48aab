#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cstddef>

namespace levyconv {

// Composite 16-point Gauss-Legendre over [a, b] with `panels` equal panels.
template <typename F>
double composite_gauss(const F& f, double a, double b, int panels) {
    using rule = boost::math::quadrature::gauss<double, 16>;
    if (panels < 1) panels = 1;
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == panels) ? b : lo + h;
        total += rule::integrate(f, lo, hi);
    }
    return total;
}

}  // namespace levyconv
