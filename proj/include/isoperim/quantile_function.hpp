#pragma once

#include <cstddef>
#include <vector>

namespace isoperim {

/// Right-continuous nonincreasing step function on (0,1]: value values_[j] on
/// [breaks_[j], breaks_[j+1]). This is the shape of a decreasing
/// rearrangement of a finitely sampled function, and everything downstream
/// (norms, maximal averages, kernel integrals) exploits the exact step
/// structure instead of quadrature.
class QuantileFunction {
public:
    /// breaks: 0 = b_0 < b_1 < ... < b_m = 1 (b_m snapped from within 1e-9);
    /// values: m nonincreasing nonnegative step values.
    QuantileFunction(std::vector<double> breaks, std::vector<double> values);

    std::size_t pieces() const { return values_.size(); }
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<double>& values() const { return values_; }

    /// Step value at s in (0,1]; throws std::domain_error outside. At s = 1
    /// this returns the last step value (the essential infimum), the
    /// right-continuous limit from the left.
    double value_at(double s) const;

    /// Exact integral over (0, t], t in [0,1].
    double integral_to(double t) const;
    double total_integral() const { return prefix_.back(); }

    /// Hardy average t^{-1} integral_to(t); throws for t outside (0,1].
    double average_to(double t) const;

    /// Value of the first step == essential supremum.
    double sup() const { return values_.front(); }

private:
    std::vector<double> breaks_;
    std::vector<double> values_;
    std::vector<double> prefix_; // prefix_[j] = integral over (0, breaks_[j]]
};

} // namespace isoperim
