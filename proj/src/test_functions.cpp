#include "isoperim/test_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <stdexcept>

namespace isoperim {

namespace {

double l2_norm(std::span<const double> x) {
    double s = 0.0;
    for (double c : x) s += c * c;
    return std::sqrt(s);
}

// Random quadratic P(x) = c + <b, x> + <x, A x> (A symmetric), coefficients
// U(-1/2, 1/2), clamped to [-3, 3]. Gradient modulus vanishes on the clamped
// region.
TestFunction clamped_quadratic(int dim, std::uint64_t seed, const std::string& name) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-0.5, 0.5);
    auto c0 = coeff(rng);
    auto b = std::make_shared<std::vector<double>>();
    auto A = std::make_shared<std::vector<double>>(); // row-major dim x dim, symmetric
    for (int i = 0; i < dim; ++i) b->push_back(coeff(rng));
    A->assign(std::size_t(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            double a = coeff(rng);
            (*A)[std::size_t(i) * dim + j] = a;
            (*A)[std::size_t(j) * dim + i] = a;
        }

    auto raw = [c0, b, A, dim](std::span<const double> x) {
        double p = c0;
        for (int i = 0; i < dim; ++i) {
            p += (*b)[i] * x[i];
            for (int j = 0; j < dim; ++j) p += (*A)[std::size_t(i) * dim + j] * x[i] * x[j];
        }
        return p;
    };
    TestFunction tf;
    tf.name = name;
    tf.value = [raw](std::span<const double> x) {
        return std::clamp(raw(x), -3.0, 3.0);
    };
    tf.grad = [raw, b, A, dim](std::span<const double> x) {
        if (std::abs(raw(x)) >= 3.0) return 0.0;
        double s = 0.0;
        for (int i = 0; i < dim; ++i) {
            double gi = (*b)[i];
            for (int j = 0; j < dim; ++j) gi += 2.0 * (*A)[std::size_t(i) * dim + j] * x[j];
            s += gi * gi;
        }
        return std::sqrt(s);
    };
    return tf;
}

} // namespace

TestFunction halfline_ramp(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("halfline_ramp: eps must be > 0");
    TestFunction tf;
    char buf[32];
    std::snprintf(buf, sizeof buf, "ramp_%g", eps);
    tf.name = buf;
    tf.value = [eps](std::span<const double> x) {
        double t = x[0];
        if (t <= -0.5 * eps) return 1.0;
        if (t >= 0.5 * eps) return 0.0;
        return (0.5 * eps - t) / eps;
    };
    tf.grad = [eps](std::span<const double> x) {
        return (std::abs(x[0]) < 0.5 * eps) ? 1.0 / eps : 0.0;
    };
    return tf;
}

std::vector<TestFunction> builtin_family(int dim, std::uint64_t poly_seed) {
    if (dim < 1) throw std::invalid_argument("builtin_family: dim must be >= 1");
    std::vector<TestFunction> fam;

    TestFunction coord;
    coord.name = "coord1";
    coord.value = [](std::span<const double> x) { return x[0]; };
    coord.grad = [](std::span<const double>) { return 1.0; };
    fam.push_back(std::move(coord));

    fam.push_back(halfline_ramp(1e-1));
    fam.push_back(halfline_ramp(1e-2));
    fam.push_back(halfline_ramp(1e-3));

    TestFunction clampf;
    clampf.name = "ramp_clamp";
    clampf.value = [](std::span<const double> x) { return std::clamp(x[0], -1.0, 1.0); };
    clampf.grad = [](std::span<const double> x) { return (std::abs(x[0]) < 1.0) ? 1.0 : 0.0; };
    fam.push_back(std::move(clampf));

    TestFunction bump;
    bump.name = "radial_bump";
    bump.value = [](std::span<const double> x) { return std::max(0.0, 1.0 - 0.5 * l2_norm(x)); };
    bump.grad = [](std::span<const double> x) { return (l2_norm(x) < 2.0) ? 0.5 : 0.0; };
    fam.push_back(std::move(bump));

    fam.push_back(clamped_quadratic(dim, poly_seed, "poly_seed1"));
    fam.push_back(clamped_quadratic(dim, poly_seed + 1, "poly_seed2"));
    return fam;
}

SampledFunction evaluate_on_points(std::span<const double> pts, int dim,
                                   const TestFunction& tf) {
    if (dim < 1 || pts.size() % std::size_t(dim) != 0 || pts.empty())
        throw std::invalid_argument("evaluate_on_points: bad point array");
    const std::size_t count = pts.size() / std::size_t(dim);
    const double w = 1.0 / double(count);
    std::vector<Sample> entries;
    entries.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::span<const double> x = pts.subspan(i * std::size_t(dim), std::size_t(dim));
        entries.push_back({tf.value(x), tf.grad(x), w});
    }
    return SampledFunction(std::move(entries), tf.name);
}

SampledFunction sample_function(const ModelMeasure& measure, const TestFunction& tf,
                                std::size_t count, std::uint64_t seed) {
    if (count == 0) throw std::invalid_argument("sample_function: empty batch");
    std::vector<double> pts = measure.sample(count, seed);
    return evaluate_on_points(pts, measure.dim(), tf);
}

SampledFunction sample_function_stratified(const ModelMeasure& measure,
                                           const TestFunction& tf, std::size_t count) {
    std::vector<double> pts = measure.sample_stratified(count);
    return evaluate_on_points(pts, 1, tf);
}

SampledFunction with_zeroed_gradients(const SampledFunction& f) {
    std::vector<Sample> entries(f.entries().begin(), f.entries().end());
    for (Sample& e : entries) e.grad = 0.0;
    return SampledFunction(std::move(entries), f.label());
}

} // namespace isoperim
