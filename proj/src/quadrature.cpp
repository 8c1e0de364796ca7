#include "isoperim/quadrature.hpp"

namespace isoperim::quad {

double integrate_fn(const std::function<double(double)>& f, double a, double b,
                    double tol, int max_depth) {
    return integrate(f, a, b, tol, max_depth);
}

} // namespace isoperim::quad
