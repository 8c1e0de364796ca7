#include "isoperim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isoperim {

std::vector<double> geometric_grid(std::size_t nodes, double lo, double hi) {
    if (nodes < 2 || lo <= 0.0 || hi <= lo)
        throw std::invalid_argument("geometric_grid: need nodes >= 2, 0 < lo < hi");
    std::vector<double> g(nodes);
    const double ratio = std::log(hi / lo);
    for (std::size_t i = 0; i < nodes; ++i)
        g[i] = lo * std::exp(ratio * double(i) / double(nodes - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> refined_grid(std::size_t nodes, double edge, double shoulder) {
    if (nodes < 16) throw std::invalid_argument("refined_grid: need nodes >= 16");
    if (!(edge > 0.0 && edge < shoulder && shoulder < 0.5))
        throw std::invalid_argument("refined_grid: need 0 < edge < shoulder < 0.5");

    std::size_t n_geo = nodes / 4;
    std::size_t n_lin = nodes - 2 * n_geo;
    if (n_lin % 2 == 0) ++n_lin; // keep 0.5 on the grid

    std::vector<double> g;
    g.reserve(2 * n_geo + n_lin + 2);

    const double span = std::log(shoulder / edge);
    for (std::size_t i = 0; i < n_geo; ++i) { // [edge, shoulder)
        double t = edge * std::exp(span * double(i) / double(n_geo));
        g.push_back(t);
        g.push_back(1.0 - t);
    }
    for (std::size_t i = 0; i < n_lin; ++i) // [shoulder, 1-shoulder]
        g.push_back(shoulder + (1.0 - 2.0 * shoulder) * double(i) / double(n_lin - 1));

    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    g.front() = edge;
    g.back() = 1.0 - edge;
    return g;
}

} // namespace isoperim
