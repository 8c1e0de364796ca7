#pragma once

#include <span>
#include <vector>

#include "isoperim/quantile_function.hpp"
#include "isoperim/sampled_function.hpp"

namespace isoperim {

/// Distribution function of |f|: total mass of {|f| > t}.
double distribution(const SampledFunction& f, double t);

/// Decreasing rearrangement of |f| as an exact step function: atoms sorted by
/// magnitude (descending), exact ties merged, breaks = cumulative weights.
QuantileFunction rearrange(const SampledFunction& f);

/// Same, from raw (magnitude, weight) arrays; magnitudes are |.|-ed, weights
/// must total 1 within 1e-9.
QuantileFunction rearrange_values(std::span<const double> magnitudes,
                                  std::span<const double> weights);

/// Rearrangement of |f| together with the gradient mass sum(w*g) carried by
/// each merged step, in step order. grad_mass[j] is the gradient integral
/// over the level set {|f| = fstar.values()[j]}.
struct DecreasingData {
    QuantileFunction fstar;
    std::vector<double> grad_mass;    // sum of w*g per step
    std::vector<double> grad_mass_sq; // sum of (w*g)^2 per step, for SE estimates
};
DecreasingData rearrange_with_gradients(const SampledFunction& f);

/// A median of the signed values: smallest attained value v with
/// mass{f <= v} >= 1/2 and mass{f >= v} >= 1/2 (both within 1e-12).
double median(const SampledFunction& f);

/// sum of w*g over the strict superlevel set {|f| > level}.
double gradient_integral_above(const SampledFunction& f, double level);

} // namespace isoperim
