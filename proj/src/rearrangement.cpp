#include "isoperim/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "isoperim/numeric.hpp"

namespace isoperim {

double distribution(const SampledFunction& f, double t) {
    KahanSum s;
    for (const Sample& e : f.entries())
        if (std::abs(e.value) > t) s.add(e.weight);
    return s.value();
}

double gradient_integral_above(const SampledFunction& f, double level) {
    KahanSum s;
    for (const Sample& e : f.entries())
        if (std::abs(e.value) > level) s.add(e.weight * e.grad);
    return s.value();
}

namespace {

struct Atom {
    double mag;
    double weight;
    double grad_mass;    // w * g
    double grad_mass_sq; // w^2 * g^2, for variance estimates of grad sums
};

// Shared core: sort descending by magnitude, merge exact ties, emit breaks.
void build_steps(std::vector<Atom>& atoms, std::vector<double>& breaks,
                 std::vector<double>& values, std::vector<double>* grad_mass,
                 std::vector<double>* grad_mass_sq = nullptr) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.mag > b.mag; });
    breaks.clear();
    values.clear();
    breaks.push_back(0.0);
    KahanSum cum;
    std::size_t i = 0;
    while (i < atoms.size()) {
        std::size_t j = i;
        KahanSum w, gm, gm2;
        while (j < atoms.size() && atoms[j].mag == atoms[i].mag) {
            w.add(atoms[j].weight);
            gm.add(atoms[j].grad_mass);
            gm2.add(atoms[j].grad_mass_sq);
            ++j;
        }
        cum.add(w.value());
        values.push_back(atoms[i].mag);
        breaks.push_back(cum.value());
        if (grad_mass) grad_mass->push_back(gm.value());
        if (grad_mass_sq) grad_mass_sq->push_back(gm2.value());
        i = j;
    }
    if (std::abs(breaks.back() - 1.0) > 1e-9)
        throw std::invalid_argument("rearrange: weights must total 1");
    breaks.back() = 1.0;
}

} // namespace

QuantileFunction rearrange(const SampledFunction& f) {
    std::vector<Atom> atoms;
    atoms.reserve(f.size());
    for (const Sample& e : f.entries())
        atoms.push_back({std::abs(e.value), e.weight, 0.0, 0.0});
    std::vector<double> breaks, values;
    build_steps(atoms, breaks, values, nullptr);
    return QuantileFunction(std::move(breaks), std::move(values));
}

QuantileFunction rearrange_values(std::span<const double> magnitudes,
                                  std::span<const double> weights) {
    if (magnitudes.size() != weights.size() || magnitudes.empty())
        throw std::invalid_argument("rearrange_values: size mismatch or empty");
    std::vector<Atom> atoms;
    atoms.reserve(magnitudes.size());
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
        if (weights[i] <= 0.0)
            throw std::invalid_argument("rearrange_values: weights must be positive");
        atoms.push_back({std::abs(magnitudes[i]), weights[i], 0.0, 0.0});
    }
    std::vector<double> breaks, values;
    build_steps(atoms, breaks, values, nullptr);
    return QuantileFunction(std::move(breaks), std::move(values));
}

DecreasingData rearrange_with_gradients(const SampledFunction& f) {
    std::vector<Atom> atoms;
    atoms.reserve(f.size());
    for (const Sample& e : f.entries()) {
        const double gm = e.weight * e.grad;
        atoms.push_back({std::abs(e.value), e.weight, gm, gm * gm});
    }
    std::vector<double> breaks, values, gm, gm2;
    build_steps(atoms, breaks, values, &gm, &gm2);
    return {QuantileFunction(std::move(breaks), std::move(values)), std::move(gm),
            std::move(gm2)};
}

double median(const SampledFunction& f) {
    std::vector<std::pair<double, double>> vw; // (signed value, weight)
    vw.reserve(f.size());
    for (const Sample& e : f.entries()) vw.emplace_back(e.value, e.weight);
    std::sort(vw.begin(), vw.end());

    constexpr double kTol = 1e-12;
    KahanSum below; // mass strictly below the current run
    std::size_t i = 0;
    while (i < vw.size()) {
        std::size_t j = i;
        KahanSum run;
        while (j < vw.size() && vw[j].first == vw[i].first) run.add(vw[j++].second);
        double le = below.value() + run.value(); // mass{f <= v}
        double ge = 1.0 - below.value();         // mass{f >= v}
        if (le >= 0.5 - kTol && ge >= 0.5 - kTol) return vw[i].first;
        below.add(run.value());
        i = j;
    }
    // Unreachable for valid mass-1 input; keep the invariant loud.
    throw std::logic_error("median: no attained value splits the mass");
}

} // namespace isoperim
