#pragma once

#include <span>
#include <vector>

#include "isoperim/quantile_function.hpp"

namespace isoperim {

/// One linear piece of a function: over an interval of length `len` the value
/// runs linearly from a to b. Only lengths and endpoint values matter; the
/// decreasing rearrangement is blind to where the interval sits.
struct LinearPiece {
    double len;
    double a;
    double b;
};

/// Nonincreasing piecewise-linear function on [0, s.back()] given by knots
/// (s[k], v[k]); jumps appear as repeated s with distinct v.
struct DecreasingPL {
    std::vector<double> s; // nondecreasing, s.front() == 0
    std::vector<double> v; // nonincreasing

    double top() const { return v.empty() ? 0.0 : v.front(); }
};

/// Exact decreasing rearrangement of a piecewise-linear function. The
/// distribution function of PL data is itself piecewise linear with kinks
/// only at piece endpoint values (flat pieces contribute jumps), so a single
/// O(K log K) threshold sweep recovers the rearrangement without any
/// level-set bisection. Values are taken as-is (callers pass nonnegative
/// data); pieces of zero length are ignored.
DecreasingPL rearrange_linear_pieces(std::span<const LinearPiece> pieces);

/// Mass-exact step envelope of a decreasing PL function: every linear stretch
/// between adjacent knots is cut into `substeps` equal parts, each replaced
/// by its midpoint value (the midpoint sum telescopes to the exact trapezoid
/// mass). The domain must cover [0,1] up to 1e-6; a shortfall beyond the
/// 1e-9 snap of QuantileFunction is padded with the final (smallest) value.
QuantileFunction to_step(const DecreasingPL& pl, int substeps = 4);

} // namespace isoperim
