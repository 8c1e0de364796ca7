#include "isoperim/profile_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "isoperim/grid.hpp"
#include "isoperim/numeric.hpp"
#include "isoperim/quadrature.hpp"

namespace isoperim {

ProfileWeightedOperator::ProfileWeightedOperator(IsoProfile profile, double t_min,
                                                 double t_max)
    : profile_(std::move(profile)), t_min_(t_min), t_max_(t_max) {
    if (!(0.0 < t_min_ && t_min_ < t_max_ && t_max_ < 1.0))
        throw std::invalid_argument("ProfileWeightedOperator: need 0 < t_min < t_max < 1");
}

double ProfileWeightedOperator::kernel_integral(const QuantileFunction& f, double t) const {
    if (!(t > 0.0 && t < 1.0))
        throw std::domain_error("kernel_integral: t must lie in (0,1)");
    if (t >= t_max_) return 0.0;
    const auto& S = f.breaks();
    const auto& v = f.values();
    auto inv_I = [this](double s) { return 1.0 / profile_.eval(s); };
    KahanSum total;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] == 0.0) break; // nonincreasing: nothing further contributes
        const double a = std::max(t, S[j]);
        const double b = std::min(t_max_, S[j + 1]);
        if (a >= b) continue;
        total.add(v[j] * quad::integrate(inv_I, a, b, 1e-10));
    }
    return total.value();
}

double ProfileWeightedOperator::apply(const QuantileFunction& f, double t) const {
    if (!(t > 0.0 && t < 1.0))
        throw std::domain_error("apply: t must lie in (0,1)");
    return profile_.eval(t) / t * kernel_integral(f, t);
}

std::vector<double> ProfileWeightedOperator::apply_on_grid(const QuantileFunction& f,
                                                           std::span<const double> ts) const {
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(apply(f, t));
    return out;
}

double ProfileWeightedOperator::image_norm(const RINormSpec& spec,
                                           const std::function<double(double)>& g) const {
    using Family = RINormSpec::Family;
    switch (spec.family) {
        case Family::Linf:
            return g(t_min_); // nonincreasing
        case Family::L1:
            return quad::integrate(g, t_min_, t_max_, 1e-8, 12);
        case Family::Lp: {
            double p = spec.p;
            double m = quad::integrate([&](double t) { return std::pow(g(t), p); },
                                       t_min_, t_max_, 1e-8, 12);
            return std::pow(m, 1.0 / p);
        }
        case Family::Lorentz: {
            if (spec.q == std::numeric_limits<double>::infinity()) {
                // t^{1/p} g(t) is no longer monotone; scan a refined grid
                double best = 0.0;
                for (double t : refined_grid(512, t_min_))
                    if (t <= t_max_)
                        best = std::max(best, std::pow(t, 1.0 / spec.p) * g(t));
                return best;
            }
            double e = spec.q / spec.p;
            double m = quad::integrate(
                [&](double t) { return std::pow(g(t), spec.q) * std::pow(t, e - 1.0); },
                t_min_, t_max_, 1e-8, 12);
            return std::pow(m, 1.0 / spec.q);
        }
        case Family::LpLogL: {
            double m = quad::integrate(
                [&](double t) {
                    double w = std::pow(std::log(1.0 / t), spec.alpha);
                    return std::pow(g(t) * w, spec.p);
                },
                t_min_, t_max_, 1e-8, 12);
            return std::pow(m, 1.0 / spec.p);
        }
    }
    throw std::logic_error("image_norm: unhandled family");
}

double ProfileWeightedOperator::estimate_operator_norm(
    const RINormSpec& spec, std::span<const QuantileFunction> testers) const {
    double best = -1.0;
    for (const QuantileFunction& f : testers) {
        const double den = norm(spec, f);
        if (!(den > 0.0)) continue;
        const double num = image_norm(spec, [&](double t) { return apply(f, t); });
        best = std::max(best, num / den);
    }
    if (best < 0.0)
        throw std::invalid_argument("estimate_operator_norm: no tester with positive norm");
    return best;
}

QuantileFunction power_tester(double beta, std::size_t steps, double inner) {
    if (!(beta >= 0.0 && beta < 1.0))
        throw std::invalid_argument("power_tester: need 0 <= beta < 1");
    if (steps < 1 || !(inner > 0.0 && inner < 0.5))
        throw std::invalid_argument("power_tester: bad steps/inner");
    std::vector<double> knots = geometric_grid(steps + 1, inner, 0.5);
    std::vector<double> breaks{0.0}, values;
    // cell (0, inner] carries the value at its right edge midpointed with 0;
    // harmless for integrability since beta < 1
    breaks.insert(breaks.end(), knots.begin(), knots.end());
    values.push_back(std::pow(0.5 * inner, -beta));
    for (std::size_t k = 0; k + 1 < knots.size(); ++k)
        values.push_back(std::pow(0.5 * (knots[k] + knots[k + 1]), -beta));
    breaks.push_back(1.0);
    values.push_back(0.0);
    return QuantileFunction(std::move(breaks), std::move(values));
}

QuantileFunction indicator_tester(double c) {
    if (!(c > 0.0 && c < 1.0))
        throw std::invalid_argument("indicator_tester: need c in (0,1)");
    return QuantileFunction({0.0, c, 1.0}, {1.0, 0.0});
}

} // namespace isoperim
