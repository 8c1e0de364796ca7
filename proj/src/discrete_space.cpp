#include "isoperim/discrete_space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "isoperim/numeric.hpp"

namespace isoperim {

namespace {

std::vector<double> checked_weights(std::vector<double> w)
{
    if (w.empty()) throw std::invalid_argument("discrete space needs at least one point");
    KahanSum total;
    for (double x : w) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw std::invalid_argument("point weights must be positive and finite");
        total.add(x);
    }
    if (std::abs(total.value() - 1.0) > 1e-9)
        throw std::invalid_argument("point weights must sum to 1 within 1e-9");
    for (double& x : w) x /= total.value();
    return w;
}

void check_triangle(const std::vector<double>& m, std::size_t n)
{
    auto d = [&](std::size_t i, std::size_t j) { return m[i * n + j]; };
    auto violates = [&](std::size_t i, std::size_t j, std::size_t k) {
        // d(i,k) <= d(i,j) + d(j,k), with slack for accumulated roundoff
        double slack = 1e-12 * (d(i, j) + d(j, k) + d(i, k));
        return d(i, k) > d(i, j) + d(j, k) + slack;
    };
    if (n <= 128) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (i != j && j != k && i != k && violates(i, j, k))
                        throw std::invalid_argument("distance matrix violates the triangle inequality");
        return;
    }
    // Too many triples to enumerate: check a deterministic pseudo-random sample.
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    auto next = [&] {
        state ^= state << 13; state ^= state >> 7; state ^= state << 17;
        return state;
    };
    for (int trial = 0; trial < 1'000'000; ++trial) {
        std::size_t i = next() % n, j = next() % n, k = next() % n;
        if (i != j && j != k && i != k && violates(i, j, k))
            throw std::invalid_argument("distance matrix violates the triangle inequality");
    }
}

} // namespace

DiscreteMetricSpace DiscreteMetricSpace::from_matrix(std::vector<std::vector<double>> dist,
                                                     std::vector<double> weights, double h)
{
    const std::size_t n = dist.size();
    if (n == 0) throw std::invalid_argument("empty distance matrix");
    if (weights.size() != n) throw std::invalid_argument("weight count does not match matrix size");
    if (!(h > 0.0)) throw std::invalid_argument("perimeter scale h must be positive");

    std::vector<double> flat(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i].size() != n) throw std::invalid_argument("distance matrix is not square");
        for (std::size_t j = 0; j < n; ++j) {
            double d = dist[i][j];
            if (!std::isfinite(d) || d < 0.0)
                throw std::invalid_argument("distances must be finite and nonnegative");
            flat[i * n + j] = d;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (flat[i * n + i] != 0.0)
            throw std::invalid_argument("distance matrix diagonal must be zero");
        for (std::size_t j = i + 1; j < n; ++j) {
            double dij = flat[i * n + j], dji = flat[j * n + i];
            if (std::abs(dij - dji) > 1e-12 * std::max(1.0, std::max(dij, dji)))
                throw std::invalid_argument("distance matrix must be symmetric");
            if (dij <= 0.0)
                throw std::invalid_argument("distinct points must have positive distance");
        }
    }
    check_triangle(flat, n);

    DiscreteMetricSpace s;
    s.matrix_ = std::move(flat);
    s.weights_ = checked_weights(std::move(weights));
    s.h_ = h;
    return s;
}

DiscreteMetricSpace DiscreteMetricSpace::from_line(std::vector<double> coords,
                                                   std::vector<double> weights, double h)
{
    const std::size_t n = coords.size();
    if (n == 0) throw std::invalid_argument("empty coordinate list");
    if (weights.size() != n) throw std::invalid_argument("weight count does not match point count");
    if (!(h > 0.0)) throw std::invalid_argument("perimeter scale h must be positive");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return coords[a] < coords[b]; });

    DiscreteMetricSpace s;
    s.coords_.resize(n);
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        double c = coords[order[k]];
        if (!std::isfinite(c)) throw std::invalid_argument("coordinates must be finite");
        s.coords_[k] = c;
        w[k] = weights[order[k]];
    }
    for (std::size_t k = 1; k < n; ++k)
        if (!(s.coords_[k] > s.coords_[k - 1]))
            throw std::invalid_argument("line coordinates must be distinct");
    s.weights_ = checked_weights(std::move(w));
    s.h_ = h;
    return s;
}

double DiscreteMetricSpace::dist(std::size_t i, std::size_t j) const
{
    if (!coords_.empty()) return std::abs(coords_[i] - coords_[j]);
    return matrix_[i * size() + j];
}

double DiscreteMetricSpace::measure(std::span<const std::uint8_t> mask) const
{
    if (mask.size() != size()) throw std::invalid_argument("mask size mismatch");
    KahanSum s;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) s.add(weights_[i]);
    return s.value();
}

namespace {

std::vector<std::uint8_t> extend_impl(const DiscreteMetricSpace& space,
                                      std::span<const std::uint8_t> A, double eps,
                                      bool closed)
{
    const std::size_t n = space.size();
    if (A.size() != n) throw std::invalid_argument("mask size mismatch");
    if (!(eps >= 0.0)) throw std::invalid_argument("extension radius must be nonnegative");

    std::vector<std::uint8_t> out(A.begin(), A.end());
    auto within = [&](double d) { return closed ? d <= eps : d < eps; };

    if (space.is_line()) {
        // Coordinates are sorted: sweep from both sides, tracking the nearest
        // selected point seen so far.
        double last = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (A[i]) last = space.coord(i);
            else if (within(space.coord(i) - last)) out[i] = 1;
        }
        double next = std::numeric_limits<double>::infinity();
        for (std::size_t k = n; k-- > 0;) {
            if (A[k]) next = space.coord(k);
            else if (within(next - space.coord(k))) out[k] = 1;
        }
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (out[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (A[j] && within(space.dist(i, j))) {
                out[i] = 1;
                break;
            }
        }
    }
    return out;
}

} // namespace

std::vector<std::uint8_t> extension(const DiscreteMetricSpace& space,
                                    std::span<const std::uint8_t> A, double eps)
{
    return extend_impl(space, A, eps, /*closed=*/false);
}

std::vector<std::uint8_t> extension_closed(const DiscreteMetricSpace& space,
                                           std::span<const std::uint8_t> A, double eps)
{
    return extend_impl(space, A, eps, /*closed=*/true);
}

double perimeter_h(const DiscreteMetricSpace& space, std::span<const std::uint8_t> A)
{
    const double h = space.h();
    auto grown = extension_closed(space, A, h * (1.0 + 1e-9));
    return (space.measure(grown) - space.measure(A)) / h;
}

std::vector<ProfilePoint> iso_profile_bruteforce(const DiscreteMetricSpace& space,
                                                 std::size_t buckets)
{
    const std::size_t n = space.size();
    if (n > 22) throw std::invalid_argument("exhaustive profile is limited to 22 points");
    if (buckets == 0) throw std::invalid_argument("need at least one measure bucket");

    const double h = space.h();
    const double eps = h * (1.0 + 1e-9);
    std::vector<std::uint32_t> nbr(n, 0); // closed h-ball as a bitmask
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (space.dist(i, j) <= eps) nbr[i] |= std::uint32_t{1} << j;

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = space.weight(i);
    auto mask_measure = [&](std::uint32_t m) {
        KahanSum s;
        while (m) {
            s.add(w[std::countr_zero(m)]);
            m &= m - 1;
        }
        return s.value();
    };

    struct Best {
        double perim = std::numeric_limits<double>::infinity();
        double mass = 0.0;
        std::uint32_t subset = 0;
    };
    std::vector<Best> best(buckets);

    const std::uint32_t full = (n == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
    for (std::uint32_t sub = 1; sub <= full; ++sub) {
        std::uint32_t grown = sub;
        std::uint32_t bits = sub;
        while (bits) {
            grown |= nbr[std::countr_zero(bits)];
            bits &= bits - 1;
        }
        double mass = mask_measure(sub);
        double perim = (mask_measure(grown) - mass) / h;
        auto b = std::min(buckets - 1, static_cast<std::size_t>(mass * static_cast<double>(buckets)));
        if (perim < best[b].perim) best[b] = {perim, mass, sub};
    }

    std::vector<ProfilePoint> out;
    for (std::size_t b = 0; b < buckets; ++b)
        if (std::isfinite(best[b].perim))
            out.push_back({best[b].mass, best[b].perim, best[b].subset, b});
    std::sort(out.begin(), out.end(),
              [](const ProfilePoint& a, const ProfilePoint& c) { return a.mass < c.mass; });
    return out;
}

double lip_modulus(const DiscreteMetricSpace& space, std::span<const double> values,
                   std::size_t i, double radius)
{
    const std::size_t n = space.size();
    if (values.size() != n) throw std::invalid_argument("value count does not match point count");
    if (i >= n) throw std::out_of_range("point index out of range");
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double d = space.dist(i, j);
        if (d <= radius) best = std::max(best, std::abs(values[i] - values[j]) / d);
    }
    return best;
}

std::vector<double> rearrange_by_definition(const SampledFunction& f,
                                            std::span<const double> probes)
{
    // Candidate levels: 0 and every attained |value|. For each level the
    // strict superlevel mass; for each probe the smallest admissible level.
    std::vector<double> levels;
    levels.reserve(f.size() + 1);
    levels.push_back(0.0);
    for (std::size_t i = 0; i < f.size(); ++i) levels.push_back(std::abs(f[i].value));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    std::vector<double> above(levels.size(), 0.0); // mass{|f| > level}
    {
        std::vector<KahanSum> acc(levels.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            double v = std::abs(f[i].value);
            // strictly below v: all levels with level < v
            auto k = static_cast<std::size_t>(
                std::lower_bound(levels.begin(), levels.end(), v) - levels.begin());
            for (std::size_t t = 0; t < k; ++t) acc[t].add(f[i].weight);
        }
        for (std::size_t t = 0; t < levels.size(); ++t) above[t] = acc[t].value();
    }

    std::vector<double> out;
    out.reserve(probes.size());
    for (double s : probes) {
        if (!(s > 0.0) || s > 1.0) throw std::domain_error("probe must lie in (0,1]");
        // `above` is nonincreasing: find the first level with mass above <= s.
        std::size_t lo = 0, hi = levels.size() - 1; // above[last] == 0 <= s always
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (above[mid] <= s) hi = mid;
            else lo = mid + 1;
        }
        out.push_back(levels[lo]);
    }
    return out;
}

DiscreteMetricSpace model_grid(const ModelMeasure& measure, std::size_t n, double halfwidth)
{
    if (measure.dim() != 1) throw std::invalid_argument("model grids are 1-d");
    if (n < 2) throw std::invalid_argument("need at least two grid points");
    if (!(halfwidth > 0.0)) throw std::invalid_argument("halfwidth must be positive");

    const double step = 2.0 * halfwidth / static_cast<double>(n - 1);
    std::vector<double> coords(n), weights(n);
    for (std::size_t k = 0; k < n; ++k)
        coords[k] = -halfwidth + static_cast<double>(k) * step;

    // Cell k owns [mid(k-1), mid(k)]; the first and last cells absorb the
    // tails so the masses add to exactly 1.
    double prev_cdf = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double boundary = 0.5 * (coords[k] + coords[k + 1]);
        double c = measure.cdf(boundary);
        weights[k] = c - prev_cdf;
        prev_cdf = c;
    }
    weights[n - 1] = 1.0 - prev_cdf;
    return DiscreteMetricSpace::from_line(std::move(coords), std::move(weights), step);
}

} // namespace isoperim
