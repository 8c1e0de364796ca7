#include "isoperim/iso_profile.hpp"

#include <algorithm>
#include <memory>
#include <vector>

#include "isoperim/grid.hpp"

namespace isoperim {

IsoProfile IsoProfile::tabulated(std::size_t nodes, double edge) const {
    auto grid = std::make_shared<std::vector<double>>(refined_grid(nodes, edge));
    auto vals = std::make_shared<std::vector<double>>();
    vals->reserve(grid->size());
    for (double t : *grid) vals->push_back(eval(t));

    IsoProfile out;
    out.name = name + " (tabulated)";
    out.half_value = half_value;
    out.has_asymptote = has_asymptote;
    out.tail_exponent = tail_exponent;
    out.log_power = log_power;
    out.eval = [grid, vals](double t) -> double {
        const auto& g = *grid;
        const auto& v = *vals;
        if (t <= g.front()) return t / g.front() * v.front();
        if (t >= g.back()) return (1.0 - t) / (1.0 - g.back()) * v.back();
        auto it = std::upper_bound(g.begin(), g.end(), t);
        std::size_t j = std::size_t(it - g.begin()); // g[j-1] <= t < g[j]
        double w = (t - g[j - 1]) / (g[j] - g[j - 1]);
        return v[j - 1] + w * (v[j] - v[j - 1]);
    };
    return out;
}

} // namespace isoperim
