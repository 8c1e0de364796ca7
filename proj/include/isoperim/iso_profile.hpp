#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace isoperim {

/// Isoperimetric profile t -> I(t) on (0,1), extended by 0 at the endpoints.
/// Profiles arising here are symmetric about 1/2, concave, and vanish at the
/// endpoints; nothing in this struct enforces that, but the inequality
/// checkers assume it.
struct IsoProfile {
    std::string name;
    std::function<double(double)> eval; // defined on (0,1)

    double half_value = 0.0; // I(1/2), kept exact through tabulation

    // Small-t behaviour I(t) ~ tail_exponent * t * (log 1/t)^log_power, when
    // known. log_power stays meaningful (0) in the purely exponential case.
    bool has_asymptote = false;
    double tail_exponent = 0.0;
    double log_power = 0.0;

    double operator()(double t) const {
        if (!(t > 0.0 && t < 1.0)) return 0.0;
        return eval(t);
    }

    /// Piecewise-linear lookup table over an endpoint-refined grid; linear to
    /// 0 outside [edge, 1-edge]. Chords of a concave function sit below it,
    /// so the table only ever under-reports I -- the conservative direction
    /// for every bound that divides by or multiplies with I on the small
    /// side. half_value and the asymptote metadata are copied, not resampled.
    IsoProfile tabulated(std::size_t nodes = 8192, double edge = 1e-9) const;
};

} // namespace isoperim
