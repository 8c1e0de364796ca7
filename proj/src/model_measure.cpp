#include "isoperim/model_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace isoperim {

namespace {

// Below this point the half-mass integral 0.5 - int_0^y density is free of
// cancellation (central mass stays under ~0.27); above it the factored tail
// representation takes over.
constexpr double kBranchSwitch = 0.7;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double to_unit_interval(std::uint64_t v) {
    // strictly inside (0,1): 53-bit mantissa shifted to bin midpoints
    return (double(v >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace

ModelMeasure::ModelMeasure(double r, int dim) : r_(r), dim_(dim) {
    if (!(r >= 1.0 && r <= 2.0))
        throw std::domain_error("ModelMeasure: exponent r must lie in [1, 2]");
    if (dim < 1) throw std::invalid_argument("ModelMeasure: dim must be >= 1");
    q_ = (r_ == 1.0) ? std::numeric_limits<double>::infinity() : r_ / (r_ - 1.0);
    alpha_ = 2.0 * boost::math::tgamma(1.0 + 1.0 / r_);
    log_two_gamma_inv_r_ = std::log(r_ * alpha_); // r * alpha_r = 2 Gamma(1/r)
}

double ModelMeasure::conjugate() const { return q_; }

double ModelMeasure::density(double x) const {
    return std::exp(-std::pow(std::abs(x), r_)) / alpha_;
}

double ModelMeasure::central_mass(double y) const {
    if (y <= 0.0) return 0.0;
    // int_0^y e^{-t^r} dt summed termwise: sum_k (-z)^k/k! * y/(rk+1) with
    // z = y^r <= 0.7 below the branch switch, so factorial decay reaches
    // double precision within ~20 terms.
    const double z = std::pow(y, r_);
    double ck = 1.0; // (-z)^k / k!
    double acc = 0.0;
    for (int k = 0; k < 64; ++k) {
        const double term = ck / (r_ * k + 1.0);
        acc += term;
        if (std::abs(term) < 1e-18) break;
        ck *= -z / double(k + 1);
    }
    return acc * y / alpha_;
}

double ModelMeasure::tail_factor(double y) const {
    // J(y) = int_0^inf e^{-s} (y^r + s)^{1/r - 1} ds, truncated at s = 60
    // (remainder < e^{-60}). The integrand is analytic on [0, 60] with its
    // branch point at s = -y^r <= -kBranchSwitch^r, so fixed Gauss panels are
    // already converged well past double precision; no adaptivity needed.
    const double z = std::pow(y, r_);
    const double beta = 1.0 / r_ - 1.0;
    auto f = [&](double s) { return std::exp(-s) * std::pow(z + s, beta); };
    using g15 = boost::math::quadrature::gauss<double, 15>;
    static constexpr double knots[] = {0.0, 0.5, 2.0, 6.0, 14.0, 32.0, 60.0};
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < std::size(knots); ++i)
        total += g15::integrate(f, knots[i], knots[i + 1]);
    return total;
}

ModelMeasure::TailEval ModelMeasure::tail_eval(double y) const {
    TailEval e;
    if (y < kBranchSwitch) {
        double tail = 0.5 - central_mass(y);
        e.log_tail = std::log(tail);
        e.density_ratio = density(y) / tail;
    } else {
        // tail(y) = e^{-y^r} J(y) / (r alpha_r); the ratio density/tail
        // collapses to r / J(y) exactly.
        double J = tail_factor(y);
        e.log_tail = -std::pow(y, r_) + std::log(J) - log_two_gamma_inv_r_;
        e.density_ratio = r_ / J;
    }
    return e;
}

double ModelMeasure::log_tail_prob(double x) const {
    if (x >= 0.0) return tail_eval(x).log_tail;
    // 1 - cdf(x) = 1 - tail(-x), and tail(-x) <= 1/2
    return std::log1p(-std::exp(tail_eval(-x).log_tail));
}

double ModelMeasure::tail_prob(double x) const {
    if (x >= 0.0) return std::exp(tail_eval(x).log_tail);
    return 1.0 - std::exp(tail_eval(-x).log_tail);
}

double ModelMeasure::cdf(double x) const {
    if (x >= 0.0) return 1.0 - std::exp(tail_eval(x).log_tail);
    return std::exp(tail_eval(-x).log_tail);
}

double ModelMeasure::invert_tail(double eps, double hint) const {
    const double L = std::log(eps); // target log tail, < log(1/2)

    double y = hint;
    if (!(y >= 0.0)) y = 0.0;
    if (y == 0.0) {
        // Q(1/r, y^r) = 2 tail(y) gives an excellent starting point; fall
        // back to the leading-order tail exponent when 2*eps underflows the
        // inverse's comfort zone.
        if (eps > 1e-300)
            y = std::pow(boost::math::gamma_q_inv(1.0 / r_, 2.0 * eps), 1.0 / r_);
        else
            y = std::pow(-L, 1.0 / r_);
        if (!(y >= 0.0)) y = 0.0;
    }

    // log tail is strictly decreasing and concave in y (the hazard ratio
    // density/tail grows for r >= 1), so a Newton step overshoots the root at
    // most once and then approaches it monotonically; the bracket built from
    // visited points catches any stray step without extra evaluations.
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 100; ++iter) {
        TailEval e = tail_eval(y);
        const double h = e.log_tail - L;
        if (std::abs(h) <= 2e-13) return y;
        if (h > 0.0) lo = std::max(lo, y); else hi = std::min(hi, y);
        double next = y + h / e.density_ratio; // Newton: d(log tail)/dy = -ratio
        if (!(next > lo && next < hi))
            next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * lo + 1.0;
        if (std::isfinite(hi) && hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            return 0.5 * (lo + hi);
        y = next;
    }
    return y; // bracket is tiny by now; best available point
}

double ModelMeasure::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("ModelMeasure::quantile: u must lie in (0,1)");
    if (u == 0.5) return 0.0;
    const double eps = std::min(u, 1.0 - u);
    const double y = invert_tail(eps, 0.0);
    return (u > 0.5) ? y : -y;
}

IsoProfile ModelMeasure::iso_profile() const {
    IsoProfile p;
    p.name = "I[mu_" + std::to_string(r_) + "]";
    p.half_value = 1.0 / alpha_; // density(0)
    p.has_asymptote = true;
    p.tail_exponent = r_;
    p.log_power = (r_ == 1.0) ? 0.0 : 1.0 / q_;
    p.eval = [m = ModelMeasure(r_, 1)](double t) {
        return m.density(m.quantile(t));
    };
    return p;
}

double ModelMeasure::asymptotic_profile(double t) const {
    if (r_ == 1.0)
        throw std::domain_error("asymptotic_profile: undefined at r = 1 (q = inf)");
    if (!(t > 0.0 && t < 1.0))
        throw std::domain_error("asymptotic_profile: t must lie in (0,1)");
    return r_ * t * std::pow(std::log(1.0 / t), 1.0 / q_);
}

std::vector<double> ModelMeasure::sample(std::size_t count, std::uint64_t seed) const {
    std::vector<double> pts(count * std::size_t(dim_));
    for (int j = 0; j < dim_; ++j) {
        std::uint64_t sub = splitmix64(seed) ^ splitmix64(0xD1B54A32D192ED03ull * std::uint64_t(j + 1));
        std::mt19937_64 rng(sub);
        for (std::size_t i = 0; i < count; ++i) {
            double u = to_unit_interval(rng());
            pts[i * std::size_t(dim_) + std::size_t(j)] = quantile(u);
        }
    }
    return pts;
}

std::vector<double> ModelMeasure::sample_stratified(std::size_t count) const {
    if (dim_ != 1)
        throw std::invalid_argument("sample_stratified: requires dim == 1");
    if (count == 0) throw std::invalid_argument("sample_stratified: empty batch");
    std::vector<double> pts(count);
    // ascending u: warm-start each tail inversion from its neighbour
    double hint = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        double u = (double(k) + 0.5) / double(count);
        if (u == 0.5) { pts[k] = 0.0; continue; }
        double eps = std::min(u, 1.0 - u);
        double y = invert_tail(eps, hint);
        hint = y;
        pts[k] = (u > 0.5) ? y : -y;
    }
    return pts;
}

} // namespace isoperim
