#pragma once

#include <string>

#include "isoperim/iso_profile.hpp"
#include "isoperim/quantile_function.hpp"
#include "isoperim/sampled_function.hpp"

namespace isoperim {

/// A rearrangement-invariant function norm on (0,1), identified by its value
/// on decreasing step functions:
///   L1, Linf, Lp:       the usual Lebesgue norms of f*;
///   Lorentz(p,q):       ( int (t^{1/p} f*(t))^q dt/t )^{1/q}, q = inf -> sup;
///   LpLogL(p,alpha):    ( int (f*(t) (log 1/t)^alpha)^p dt )^{1/p}.
struct RINormSpec {
    enum class Family { L1, Linf, Lp, Lorentz, LpLogL };

    Family family = Family::L1;
    double p = 1.0;
    double q = 1.0;     // Lorentz fine index; may be +inf
    double alpha = 0.0; // LpLogL log exponent, >= 0

    /// Accepts "L1", "Linf", "Lp:p", "Lorentz:p,q" (q may be "inf"),
    /// "LpLogL:p,alpha". Throws std::invalid_argument otherwise.
    static RINormSpec parse(const std::string& text);

    std::string label() const;
};

/// Norm of a decreasing step function. Every family reduces to an exact
/// finite sum over the steps: power integrals in closed form, the log-power
/// weight through the regularized incomplete gamma (int_0^s (log 1/u)^b du =
/// Gamma(1+b) Q(1+b, log 1/s)).
double norm(const RINormSpec& spec, const QuantileFunction& fstar);

/// Convenience: norm of the decreasing rearrangement of |f|.
double norm(const RINormSpec& spec, const SampledFunction& f);

struct LsOptions {
    std::size_t grid_nodes = 4096;
    double edge = 1e-12;   // evaluation grid spans [edge, 1-edge]
    int substeps = 4;      // to_step refinement of the rearranged envelope
    double t_floor = 0.0;  // oscillation counted as 0 below this t (empirical
                           // quantiles are unidentifiable in the deep tail)
};

/// Norm of t -> (f**(t) - f*(t)) I(t)/t in the given space. The integrand is
/// not monotone, so it is rebuilt as a piecewise-linear function on the union
/// of the evaluation grid and the steps of f* (one-sided at the jumps),
/// exactly rearranged, and fed to `norm`. For Linf the PL sup is returned
/// directly, so the value matches a pointwise scan of the same grid.
double ls_norm(const RINormSpec& spec, const SampledFunction& f, const IsoProfile& I,
               const LsOptions& opts = {});

/// Atoms shifted by -weighted mean; gradient data and weights unchanged.
SampledFunction deviation_from_mean(const SampledFunction& f);

} // namespace isoperim
