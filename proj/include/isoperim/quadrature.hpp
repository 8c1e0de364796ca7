#pragma once

#include <functional>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace isoperim::quad {

/// Adaptive Gauss-Kronrod (15-point) integral of f over [a, b].
/// tol is the relative error target; max_depth bounds the interval splitting.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12, int max_depth = 15) {
    if (a == b) return 0.0;
    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    return gk::integrate(std::forward<F>(f), a, b, max_depth, tol);
}

/// Same, but also reports the error estimate from the last refinement level.
template <class F>
double integrate_err(F&& f, double a, double b, double* err, double tol = 1e-12,
                     int max_depth = 15) {
    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    return gk::integrate(std::forward<F>(f), a, b, max_depth, tol, err);
}

/// Non-template convenience for callers that already hold a std::function.
double integrate_fn(const std::function<double(double)>& f, double a, double b,
                    double tol = 1e-12, int max_depth = 15);

} // namespace isoperim::quad
