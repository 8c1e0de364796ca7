#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "isoperim/iso_profile.hpp"

namespace isoperim {

/// Product probability measure on R^dim whose one-dimensional marginal has
/// density exp(-|t|^r) / alpha_r with alpha_r = 2 Gamma(1 + 1/r), 1 <= r <= 2.
/// r = 1 is the two-sided exponential law, r = 2 the Gaussian (variance 1/2).
///
/// Tail evaluations are cancellation-free on both sides and quantiles are
/// solved in log-tail space, so both stay meaningful far out (tail masses down
/// to the underflow limit) instead of saturating at 1 ulp around the center.
class ModelMeasure {
public:
    explicit ModelMeasure(double r, int dim = 1);

    double r() const { return r_; }
    int dim() const { return dim_; }
    double normalizer() const { return alpha_; } // alpha_r
    double conjugate() const;                    // q, 1/r + 1/q = 1; +inf at r = 1

    double density(double x) const; // 1-d marginal density
    double cdf(double x) const;
    double tail_prob(double x) const;     // 1 - cdf(x)
    double log_tail_prob(double x) const; // log(1 - cdf(x)), any x

    /// Inverse cdf on (0,1); throws std::domain_error outside. The computed
    /// tail probability at the returned point matches the requested one to
    /// 1e-12 relative.
    double quantile(double u) const;

    /// I(t) = density(quantile(t)) on (0,1), 0 at the endpoints. Carries the
    /// small-t asymptote metadata I(t) ~ r t (log 1/t)^{1/q}.
    IsoProfile iso_profile() const;

    /// r t (log 1/t)^{1/q} for t in (0,1). Throws std::domain_error when
    /// r = 1 (q = inf leaves no log-power correction) or t is outside (0,1).
    double asymptotic_profile(double t) const;

    /// count i.i.d. points in R^dim, row-major (point i at [i*dim, (i+1)*dim)).
    /// Coordinate j is drawn by inverse cdf from its own deterministic
    /// substream of `seed`, so enlarging dim never reshuffles lower
    /// coordinates.
    std::vector<double> sample(std::size_t count, std::uint64_t seed) const;

    /// Midpoint-stratified 1-d draws quantile((k+1/2)/count), ascending.
    /// Requires dim == 1.
    std::vector<double> sample_stratified(std::size_t count) const;

private:
    struct TailEval {
        double log_tail;       // log(1 - cdf(y)), y >= 0
        double density_ratio;  // density(y) / tail(y)
    };
    TailEval tail_eval(double y) const;
    double tail_factor(double y) const;  // J(y) = int_0^inf e^{-s} (y^r+s)^{1/r-1} ds
    double central_mass(double y) const; // int_0^y density, y small
    double invert_tail(double eps, double hint) const; // solve tail(y) = eps, y >= 0

    double r_;
    double q_;
    double alpha_;
    double log_two_gamma_inv_r_; // log(2 Gamma(1/r)) = log(r * alpha_r)
    int dim_;
};

} // namespace isoperim
