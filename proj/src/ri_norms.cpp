#include "isoperim/ri_norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "isoperim/grid.hpp"
#include "isoperim/numeric.hpp"
#include "isoperim/piecewise_linear.hpp"
#include "isoperim/rearrangement.hpp"

namespace isoperim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, bool allow_inf) {
    std::string t = trim(s);
    if (allow_inf && (t == "inf" || t == "Inf" || t == "INF")) return kInf;
    std::size_t used = 0;
    double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("RINormSpec: bad number '" + s + "'");
    return v;
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// C(s) = int_0^s (log 1/u)^beta du, beta >= 0, exact via the regularized
// upper incomplete gamma: substituting w = log 1/u gives
// Gamma(1+beta) Q(1+beta, log 1/s).
double log_power_mass(double s, double beta) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return boost::math::tgamma(1.0 + beta);
    if (beta == 0.0) return s;
    return boost::math::tgamma(1.0 + beta) * boost::math::gamma_q(1.0 + beta, std::log(1.0 / s));
}

} // namespace

RINormSpec RINormSpec::parse(const std::string& text) {
    const std::string t = trim(text);
    RINormSpec spec;
    if (t == "L1") { spec.family = Family::L1; return spec; }
    if (t == "Linf" || t == "Linfty") { spec.family = Family::Linf; return spec; }

    auto colon = t.find(':');
    const std::string head = (colon == std::string::npos) ? t : t.substr(0, colon);
    const std::string args = (colon == std::string::npos) ? "" : t.substr(colon + 1);
    auto split_two = [&](double& x, double& y, bool inf_second) {
        auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("RINormSpec: '" + text + "' needs two parameters");
        x = parse_number(args.substr(0, comma), false);
        y = parse_number(args.substr(comma + 1), inf_second);
    };

    if (head == "Lp") {
        spec.family = Family::Lp;
        spec.p = parse_number(args, false);
        if (!(spec.p > 0.0)) throw std::invalid_argument("RINormSpec: Lp needs p > 0");
        return spec;
    }
    if (head == "Lorentz") {
        spec.family = Family::Lorentz;
        split_two(spec.p, spec.q, true);
        if (!(spec.p > 0.0) || !(spec.q > 0.0))
            throw std::invalid_argument("RINormSpec: Lorentz needs p, q > 0");
        return spec;
    }
    if (head == "LpLogL") {
        spec.family = Family::LpLogL;
        split_two(spec.p, spec.alpha, false);
        if (!(spec.p > 0.0) || spec.alpha < 0.0)
            throw std::invalid_argument("RINormSpec: LpLogL needs p > 0, alpha >= 0");
        return spec;
    }
    throw std::invalid_argument("RINormSpec: unrecognized norm '" + text + "'");
}

std::string RINormSpec::label() const {
    switch (family) {
        case Family::L1: return "L1";
        case Family::Linf: return "Linf";
        case Family::Lp: return "Lp:" + short_number(p);
        case Family::Lorentz:
            return "Lorentz:" + short_number(p) + "," + (q == kInf ? "inf" : short_number(q));
        case Family::LpLogL: return "LpLogL:" + short_number(p) + "," + short_number(alpha);
    }
    return "?";
}

double norm(const RINormSpec& spec, const QuantileFunction& f) {
    const auto& S = f.breaks();
    const auto& v = f.values();
    switch (spec.family) {
        case RINormSpec::Family::L1:
            return f.total_integral();
        case RINormSpec::Family::Linf:
            return f.sup();
        case RINormSpec::Family::Lp: {
            KahanSum s;
            for (std::size_t j = 0; j < v.size(); ++j)
                s.add(std::pow(v[j], spec.p) * (S[j + 1] - S[j]));
            return std::pow(s.value(), 1.0 / spec.p);
        }
        case RINormSpec::Family::Lorentz: {
            if (spec.q == kInf) {
                double best = 0.0;
                for (std::size_t j = 0; j < v.size(); ++j)
                    best = std::max(best, std::pow(S[j + 1], 1.0 / spec.p) * v[j]);
                return best;
            }
            const double e = spec.q / spec.p;
            KahanSum s;
            for (std::size_t j = 0; j < v.size(); ++j)
                s.add(std::pow(v[j], spec.q) *
                      (std::pow(S[j + 1], e) - std::pow(S[j], e)) / e);
            return std::pow(s.value(), 1.0 / spec.q);
        }
        case RINormSpec::Family::LpLogL: {
            const double beta = spec.alpha * spec.p;
            KahanSum s;
            double prev = 0.0; // C(S[0]) with S[0] = 0
            for (std::size_t j = 0; j < v.size(); ++j) {
                double next = log_power_mass(S[j + 1], beta);
                s.add(std::pow(v[j], spec.p) * (next - prev));
                prev = next;
            }
            return std::pow(s.value(), 1.0 / spec.p);
        }
    }
    throw std::logic_error("norm: unhandled family");
}

double norm(const RINormSpec& spec, const SampledFunction& f) {
    return norm(spec, rearrange(f));
}

SampledFunction deviation_from_mean(const SampledFunction& f) { return f.centered(); }

double ls_norm(const RINormSpec& spec, const SampledFunction& f, const IsoProfile& I,
               const LsOptions& opts) {
    const QuantileFunction fstar = rearrange(f);
    const auto& S = fstar.breaks();
    const auto& v = fstar.values();
    std::vector<double> grid = refined_grid(opts.grid_nodes, opts.edge);
    if (opts.t_floor > 0.0 && opts.t_floor < 1.0)
        grid.insert(std::lower_bound(grid.begin(), grid.end(), opts.t_floor), opts.t_floor);

    // Assemble t -> (f**(t) - f*(t)) I(t)/t piece by piece of f*, one-sided at
    // the step jumps; the union with `grid` controls the PL error inside the
    // steps. On (0, S[1]) the oscillation vanishes identically.
    std::vector<LinearPiece> pieces;
    pieces.reserve(grid.size() + 2 * v.size() + 4);
    double sup_val = 0.0;

    auto g_at = [&](double t, double step_value) {
        if (t < opts.t_floor) return 0.0;
        const double osc = std::max(0.0, fstar.average_to(t) - step_value);
        if (osc == 0.0) return 0.0;
        return osc * I(t) / t;
    };

    std::size_t gi = 0; // first grid node > current segment start
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double a = S[j], b = S[j + 1];
        double t_prev = a;
        double g_prev = (j == 0) ? 0.0 : g_at(a, v[j]);
        sup_val = std::max(sup_val, g_prev);
        while (gi < grid.size() && grid[gi] <= a) ++gi;
        for (std::size_t k = gi; k < grid.size() && grid[k] < b; ++k) {
            const double t = grid[k];
            const double g = g_at(t, v[j]);
            pieces.push_back({t - t_prev, g_prev, g});
            sup_val = std::max(sup_val, g);
            t_prev = t;
            g_prev = g;
        }
        const double g_end = g_at(b, v[j]); // left limit at the jump
        pieces.push_back({b - t_prev, g_prev, g_end});
        sup_val = std::max(sup_val, g_end);
    }

    if (spec.family == RINormSpec::Family::Linf) return sup_val;
    if (sup_val == 0.0) return 0.0;
    return norm(spec, to_step(rearrange_linear_pieces(pieces), opts.substeps));
}

} // namespace isoperim
