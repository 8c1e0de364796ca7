#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "isoperim/model_measure.hpp"
#include "isoperim/sampled_function.hpp"

namespace isoperim {

/// Finite metric probability space: either an explicit distance matrix
/// (symmetric, zero diagonal, positive off-diagonal, triangle inequality --
/// verified exhaustively up to 128 points, on sampled triples beyond) or
/// sorted 1-d coordinates with |x - y| (triangle-free by construction, so
/// large grids stay O(n)). Weights are positive and renormalized to total
/// mass 1 (input must already be within 1e-9).
class DiscreteMetricSpace {
public:
    static DiscreteMetricSpace from_matrix(std::vector<std::vector<double>> dist,
                                           std::vector<double> weights, double h);
    static DiscreteMetricSpace from_line(std::vector<double> coords,
                                         std::vector<double> weights, double h);

    std::size_t size() const { return weights_.size(); }
    double h() const { return h_; }
    bool is_line() const { return !coords_.empty(); }
    double coord(std::size_t i) const { return coords_[i]; }
    double dist(std::size_t i, std::size_t j) const;
    double weight(std::size_t i) const { return weights_[i]; }

    double measure(std::span<const std::uint8_t> mask) const;

private:
    DiscreteMetricSpace() = default;
    std::vector<double> matrix_; // row-major, empty when coords_ is used
    std::vector<double> coords_; // sorted when nonempty
    std::vector<double> weights_;
    double h_ = 0.0;
};

/// Open metric extension {x : d(x, A) < eps} (A itself always included).
std::vector<std::uint8_t> extension(const DiscreteMetricSpace& space,
                                    std::span<const std::uint8_t> A, double eps);

/// Closed variant {x : d(x, A) <= eps}; the discrete perimeter uses this at
/// eps = h (with a 1e-9 relative nudge so exact-spacing grids count their
/// immediate neighbours despite roundoff).
std::vector<std::uint8_t> extension_closed(const DiscreteMetricSpace& space,
                                           std::span<const std::uint8_t> A, double eps);

/// (mu(A_h) - mu(A)) / h with the closed h-extension.
double perimeter_h(const DiscreteMetricSpace& space, std::span<const std::uint8_t> A);

struct ProfilePoint {
    double mass;      // exact measure of the minimizing subset
    double perimeter; // its h-perimeter
    std::uint32_t subset;
    std::size_t bucket;
};

/// Exhaustive lower isoperimetric profile: every nonempty subset (n <= 22),
/// bucketed by measure into `buckets` uniform cells, minimum perimeter per
/// bucket. Empty buckets are omitted; entries come back sorted by mass.
std::vector<ProfilePoint> iso_profile_bruteforce(const DiscreteMetricSpace& space,
                                                 std::size_t buckets = 64);

/// max over j != i with d(i,j) <= radius of |f[i] - f[j]| / d(i,j); 0 when
/// no neighbour qualifies.
double lip_modulus(const DiscreteMetricSpace& space, std::span<const double> values,
                   std::size_t i, double radius);

/// Literal inf-definition rearrangement, evaluated probe by probe over the
/// finite candidate level set {0} and the attained |values|: the smallest
/// level whose strict superlevel mass is <= s. Deliberately naive -- this is
/// the independent oracle for `rearrange`. Probes must lie in (0,1].
std::vector<double> rearrange_by_definition(const SampledFunction& f,
                                            std::span<const double> probes);

/// Uniform n-point grid on [-halfwidth, halfwidth] carrying the exact cell
/// masses of the (1-d) model measure: cells split at midpoints, the extreme
/// cells absorbing the tails; h = grid spacing.
DiscreteMetricSpace model_grid(const ModelMeasure& measure, std::size_t n,
                               double halfwidth);

} // namespace isoperim
