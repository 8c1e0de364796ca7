#include "isoperim/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isoperim/numeric.hpp"

namespace isoperim {

namespace {

struct Event {
    double tau;
    double slope_on;  // starts contributing below tau (piece top end)
    double slope_off; // saturates below tau (piece bottom end)
    double flat_mass; // measure of {f == tau} from flat pieces
};

} // namespace

DecreasingPL rearrange_linear_pieces(std::span<const LinearPiece> pieces) {
    double scale = 0.0;
    KahanSum total;
    for (const LinearPiece& p : pieces) {
        if (!(p.len >= 0.0) || !std::isfinite(p.a) || !std::isfinite(p.b))
            throw std::invalid_argument("rearrange_linear_pieces: bad piece");
        if (p.len == 0.0) continue;
        scale = std::max({scale, std::abs(p.a), std::abs(p.b)});
        total.add(p.len);
    }
    // Pieces whose value span sits below fp resolution get slopes up to
    // ~len/1e-16; the sweep's running slope sum then sheds ~slope*eps of
    // measure per event, far past to_step's domain tolerance. Treat them as
    // flat: values move by at most flat_tol, invisible at norm tolerances.
    const double flat_tol = 1e-8 * scale;

    std::vector<Event> ev;
    ev.reserve(2 * pieces.size());
    for (const LinearPiece& p : pieces) {
        if (p.len == 0.0) continue;
        if (std::abs(p.a - p.b) <= flat_tol) {
            ev.push_back({0.5 * (p.a + p.b), 0.0, 0.0, p.len});
        } else {
            double lo = std::min(p.a, p.b), hi = std::max(p.a, p.b);
            double slope = p.len / (hi - lo);
            ev.push_back({hi, slope, 0.0, 0.0});
            ev.push_back({lo, 0.0, slope, 0.0});
        }
    }
    if (ev.empty()) throw std::invalid_argument("rearrange_linear_pieces: no mass");

    std::sort(ev.begin(), ev.end(),
              [](const Event& x, const Event& y) { return x.tau > y.tau; });

    DecreasingPL out;
    KahanSum lambda; // measure strictly above the current threshold
    KahanSum sigma;  // summed slope of pieces straddling the threshold
    double tau_prev = ev.front().tau;
    std::size_t i = 0;
    while (i < ev.size()) {
        const double tau = ev[i].tau;
        lambda.add(sigma.value() * (tau_prev - tau));
        double on = 0.0, off = 0.0, fm = 0.0;
        for (; i < ev.size() && ev[i].tau == tau; ++i) {
            on += ev[i].slope_on;
            off += ev[i].slope_off;
            fm += ev[i].flat_mass;
        }
        out.s.push_back(lambda.value());
        out.v.push_back(tau);
        if (fm > 0.0) { // flat level set: jump in the distribution function
            lambda.add(fm);
            out.s.push_back(lambda.value());
            out.v.push_back(tau);
        }
        sigma.add(on - off);
        tau_prev = tau;
    }
    // The sweep conserves measure in exact arithmetic; put the residual fp
    // drift back onto the exact total so downstream domain checks see it.
    const double got = out.s.back();
    if (got > 0.0 && std::abs(got - total.value()) > 1e-3 * std::max(1.0, total.value()))
        throw std::logic_error("rearrange_linear_pieces: measure drifted");
    if (got > 0.0 && got != total.value()) {
        const double sc = total.value() / got;
        for (double& s : out.s) s *= sc;
    }
    return out;
}

QuantileFunction to_step(const DecreasingPL& pl, int substeps) {
    if (substeps < 1) throw std::invalid_argument("to_step: substeps must be >= 1");
    if (pl.s.size() < 2 || pl.s.size() != pl.v.size())
        throw std::invalid_argument("to_step: degenerate input");
    const double total = pl.s.back();
    if (std::abs(total - 1.0) > 1e-6)
        throw std::invalid_argument("to_step: domain must cover [0,1] (within 1e-6)");

    std::vector<double> breaks{0.0}, values;
    KahanSum cum;
    double last_value = 0.0;
    for (std::size_t k = 0; k + 1 < pl.s.size(); ++k) {
        const double w = pl.s[k + 1] - pl.s[k];
        last_value = pl.v[k + 1];
        if (w <= 0.0) continue; // jump knot
        const double v0 = pl.v[k], v1 = pl.v[k + 1];
        const int m = (v0 == v1) ? 1 : substeps;
        for (int j = 0; j < m; ++j) {
            cum.add(w / m);
            breaks.push_back(cum.value());
            values.push_back(v0 + (v1 - v0) * (j + 0.5) / m);
        }
    }
    if (1.0 - cum.value() > 1e-9) { // pad a sliver of domain with the end value
        breaks.push_back(1.0);
        values.push_back(std::max(0.0, last_value));
    } else if (cum.value() > 1.0 + 1e-9) { // shave the (<= 1e-6) overshoot
        const double sc = 1.0 / cum.value();
        for (double& b : breaks) b *= sc;
    }
    // Collapse exact value ties and drop steps whose width underflowed the
    // cumulative sum (they carry zero measure), so the constructor sees clean
    // strictly increasing steps.
    std::vector<double> cb{breaks.front()}, cv;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (breaks[j + 1] <= cb.back()) continue;
        if (!cv.empty() && values[j] == cv.back())
            cb.back() = breaks[j + 1];
        else {
            cv.push_back(values[j]);
            cb.push_back(breaks[j + 1]);
        }
    }
    return QuantileFunction(std::move(cb), std::move(cv));
}

} // namespace isoperim
