#pragma once

#include <functional>
#include <span>
#include <vector>

#include "isoperim/iso_profile.hpp"
#include "isoperim/quantile_function.hpp"
#include "isoperim/ri_norms.hpp"

namespace isoperim {

/// Averaging operator attached to an isoperimetric profile:
///
///   (Q f)(t) = (I(t)/t) * int_t^{t_max} f(s)/I(s) ds
///
/// for nonnegative nonincreasing step data f. The model profiles vanish at 1
/// fast enough that int^1 ds/I(s) diverges there, so any f with positive
/// essential infimum has an infinite untruncated kernel integral; the upper
/// cap t_max (default 1 - 1e-6) is part of the operator's definition here,
/// and every reported quantity is a lower bound for the untruncated one,
/// exact whenever f vanishes past t_max... callers that need the divergence
/// signalled should test f.value_at(t_max) > 0.
class ProfileWeightedOperator {
public:
    explicit ProfileWeightedOperator(IsoProfile profile, double t_min = 1e-6,
                                     double t_max = 1.0 - 1e-6);

    const IsoProfile& profile() const { return profile_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }

    /// int_t^{t_max} f(s)/I(s) ds, summed exactly over the steps of f with
    /// adaptive quadrature inside each step. Throws std::domain_error unless
    /// t lies in (0,1).
    double kernel_integral(const QuantileFunction& f, double t) const;

    /// (I(t)/t) * kernel_integral(f, t).
    double apply(const QuantileFunction& f, double t) const;

    std::vector<double> apply_on_grid(const QuantileFunction& f,
                                      std::span<const double> ts) const;

    /// Tester-based lower bound for the operator norm on the given space:
    /// max over testers of ||Q f|| / ||f||. Q f of admissible data is itself
    /// nonincreasing (I concave with I(0)=0 makes I(t)/t nonincreasing), so
    /// image norms are taken by direct quadrature over [t_min, t_max] --
    /// no rearrangement step. Testers with zero norm are skipped; throws
    /// std::invalid_argument when none remain.
    double estimate_operator_norm(const RINormSpec& spec,
                                  std::span<const QuantileFunction> testers) const;

    /// Norm over [t_min, t_max] of a nonincreasing nonnegative callable,
    /// by the same direct-quadrature rules used for operator images.
    double image_norm(const RINormSpec& spec, const std::function<double(double)>& g) const;

private:
    IsoProfile profile_;
    double t_min_;
    double t_max_;
};

/// Step tester supported on (0, 1/2]: value ((s_{k-1}+s_k)/2)^{-beta} on each
/// of `steps` geometric cells, zero beyond 1/2. Needs 0 <= beta < 1 so the
/// data stays integrable.
QuantileFunction power_tester(double beta, std::size_t steps = 256, double inner = 1e-8);

/// Indicator of (0, c] as step data (1 on (0,c], 0 on (c,1]).
QuantileFunction indicator_tester(double c);

} // namespace isoperim
