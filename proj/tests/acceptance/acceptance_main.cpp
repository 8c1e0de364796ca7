// Acceptance gate: eleven pinned criteria, one PASS/FAIL line each, exit code
// equal to the number of failures. Tolerances and budgets are deliberately
// hard-coded here -- this binary is the contract, not a configurable tool.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "isoperim/discrete_space.hpp"
#include "isoperim/grid.hpp"
#include "isoperim/inequalities.hpp"
#include "isoperim/model_measure.hpp"
#include "isoperim/profile_operator.hpp"
#include "isoperim/rearrangement.hpp"
#include "isoperim/test_functions.hpp"

using namespace isoperim;
using Clock = std::chrono::steady_clock;

namespace {

struct Harness {
    int failures = 0;

    template <class Fn>
    void criterion(int id, const std::string& title, double budget_seconds, Fn&& body) {
        std::string detail;
        bool ok = false;
        auto start = Clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (ok && elapsed > budget_seconds) {
            ok = false;
            detail = "over budget";
        }
        if (!ok) ++failures;
        std::printf("%s  %2d  %s  [%.2fs/%gs]%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(),
                    elapsed, budget_seconds, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }
};

SampledFunction random_function(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> natoms(1, 64);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    std::uniform_real_distribution<double> wgt(0.05, 1.0);
    int n = natoms(rng);
    std::vector<Sample> atoms(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& a : atoms) {
        a.value = val(rng);
        if (rng() % 4 == 0) a.value = std::floor(a.value);
        if (rng() % 8 == 0) a.value = 0.0;
        a.grad = 0.0;
        a.weight = wgt(rng);
        total += a.weight;
    }
    for (auto& a : atoms) a.weight /= total;
    return SampledFunction(std::move(atoms), "random");
}

// Shared state between the suite criteria (4, 6, 7): one pass over the nine
// configurations, every verdict stored.
struct SuiteResults {
    bool ran = false;
    std::string error;
    bool core_pass = true;        // ledoux + talenti_mazya + polya_szego + oscillation
    std::string core_detail;
    bool median_pass = true;      // criterion 6
    bool ls_pass = true;
    bool linf_agrees = true;
    std::string six_detail;
    std::map<int, double> lp_logl_const_by_dim;   // criterion 7 (r = 2, coord1)
    std::map<int, double> concentration_by_dim;
};

SuiteResults& suite_results() {
    static SuiteResults state;
    if (state.ran) return state;
    state.ran = true;
    try {
        const double rs[] = {1.2, 1.5, 2.0};
        const int dims[] = {1, 2, 3};
        const std::size_t kPoints = 100000;
        CheckOptions opts; // rel_tol 1e-3, 3-SE statistical allowance
        const RINormSpec ls_spaces[] = {RINormSpec::parse("L1"), RINormSpec::parse("Lp:2"),
                                        RINormSpec::parse("Linf")};
        int config_index = 0;
        for (double r : rs) {
            for (int dim : dims) {
                const std::uint64_t seed = 7 + 13 * static_cast<std::uint64_t>(config_index++);
                ModelMeasure measure(r, dim);
                IsoProfile profile = measure.iso_profile().tabulated();
                auto pts = measure.sample(kPoints, seed);
                for (const TestFunction& tf : builtin_family(dim)) {
                    SampledFunction f = evaluate_on_points(pts, dim, tf);
                    auto tag = [&](const char* what) {
                        std::ostringstream ss;
                        ss << what << " r=" << r << " dim=" << dim << " f=" << tf.name;
                        return ss.str();
                    };

                    InequalityReport rep = check_ledoux(f, profile, opts);
                    if (!rep.pass && state.core_pass) {
                        state.core_pass = false;
                        state.core_detail = tag("ledoux");
                    }
                    rep = check_talenti_mazya(f, profile, opts);
                    if (!rep.pass && state.core_pass) {
                        state.core_pass = false;
                        state.core_detail = tag("talenti_mazya");
                    }
                    rep = check_polya_szego(f, profile, opts);
                    if (!rep.pass && state.core_pass) {
                        state.core_pass = false;
                        state.core_detail = tag("polya_szego");
                    }
                    InequalityReport osc = check_main(f, profile, opts);
                    if (!osc.pass && state.core_pass) {
                        state.core_pass = false;
                        state.core_detail = tag("oscillation");
                    }

                    rep = check_poincare_median(f, profile, opts);
                    if (!rep.pass && state.median_pass) {
                        state.median_pass = false;
                        state.six_detail = tag("median_poincare");
                    }
                    for (const RINormSpec& space : ls_spaces) {
                        InequalityReport ls = check_ls_poincare(f, profile, space, opts);
                        if (!ls.pass && state.ls_pass) {
                            state.ls_pass = false;
                            state.six_detail = tag(("ls_poincare[" + space.label() + "]").c_str());
                        }
                        if (space.family == RINormSpec::Family::Linf &&
                            ls.pass != osc.pass && state.linf_agrees) {
                            state.linf_agrees = false;
                            state.six_detail = tag("Linf/oscillation verdict mismatch");
                        }
                    }

                    if (r == 2.0 && tf.name == "coord1") {
                        state.lp_logl_const_by_dim[dim] =
                            check_lp_loglq(f, profile, 2.0, opts).realized_constant;
                        state.concentration_by_dim[dim] =
                            check_concentration(f, profile, opts).realized_constant;
                    }
                }
            }
        }
    } catch (const std::exception& e) {
        state.error = e.what();
    }
    return state;
}

bool spread_within_factor_two(const std::map<int, double>& by_dim, std::string& detail,
                              const char* what) {
    if (by_dim.size() != 3) {
        detail = std::string(what) + ": missing dimensions";
        return false;
    }
    double lo = by_dim.begin()->second, hi = lo;
    for (const auto& [dim, c] : by_dim) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            detail = std::string(what) + ": degenerate constant at dim " + std::to_string(dim);
            return false;
        }
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    std::ostringstream ss;
    ss << what << " spread " << hi / lo;
    detail += (detail.empty() ? "" : "; ") + ss.str();
    return hi / lo <= 2.0;
}

} // namespace

int main() {
    Harness h;

    h.criterion(1, "rearrangement equals its literal definition on 1000 random functions", 10.0,
                [](std::string& detail) {
                    std::mt19937_64 rng(20260814u);
                    std::uniform_real_distribution<double> u(1e-12, 1.0 - 1e-12);
                    for (int trial = 0; trial < 1000; ++trial) {
                        SampledFunction f = random_function(rng);
                        QuantileFunction q = rearrange(f);
                        // Probe strictly inside (0,1): at s = 1 the literal
                        // infimum is 0 (no superlevel mass ever exceeds 1)
                        // while the step form carries the essential infimum,
                        // so the two conventions only agree on the interior.
                        // Probe step midpoints rather than jump abscissae:
                        // the cumulative weights behind a break differ by one
                        // ulp between summation orders, so exactly at a jump
                        // the two routes may legitimately straddle it.
                        std::vector<double> probes;
                        probes.reserve(1000);
                        for (std::size_t j = 0; j + 1 < q.breaks().size(); ++j) {
                            probes.push_back(0.5 * (q.breaks()[j] + q.breaks()[j + 1]));
                            if (probes.size() >= 500) break;
                        }
                        while (probes.size() < 1000) probes.push_back(u(rng));
                        auto oracle = rearrange_by_definition(f, probes);
                        for (std::size_t k = 0; k < probes.size(); ++k) {
                            if (q.value_at(probes[k]) != oracle[k]) {
                                std::ostringstream ss;
                                ss << "trial " << trial << " s=" << probes[k] << ": "
                                   << q.value_at(probes[k]) << " != " << oracle[k];
                                detail = ss.str();
                                return false;
                            }
                        }
                    }
                    return true;
                });

    h.criterion(2, "profile values: I_2(1/2) = 1/sqrt(pi), I_1 = min(t,1-t)", 5.0,
                [](std::string& detail) {
                    IsoProfile I2 = ModelMeasure(2.0).iso_profile();
                    double ref = 1.0 / std::sqrt(std::numbers::pi);
                    if (std::abs(I2(0.5) - ref) > 1e-8) {
                        detail = "gaussian half-value off: " + std::to_string(I2(0.5));
                        return false;
                    }
                    IsoProfile I1 = ModelMeasure(1.0).iso_profile();
                    for (double t : refined_grid(1024, 1e-8)) {
                        if (std::abs(I1(t) - std::min(t, 1.0 - t)) > 1e-6) {
                            detail = "exponential profile off at t=" + std::to_string(t);
                            return false;
                        }
                    }
                    return true;
                });

    h.criterion(3, "profile asymptotics: I(t)/(t (log 1/t)^{1/q}) -> r", 5.0,
                [](std::string& detail) {
                    for (double r : {1.2, 1.5, 2.0}) {
                        ModelMeasure m(r);
                        IsoProfile I = m.iso_profile();
                        double q = m.conjugate();
                        auto ratio = [&](double t) {
                            return I(t) / (t * std::pow(std::log(1.0 / t), 1.0 / q));
                        };
                        double fine = ratio(1e-8), coarse = ratio(1e-4);
                        std::ostringstream ss;
                        ss << "r=" << r << " ratio(1e-8)=" << fine << " ratio(1e-4)=" << coarse;
                        if (!(fine >= 0.8 * r && fine <= 1.0 * r)) {
                            detail = ss.str() + " outside [0.8r, r]";
                            return false;
                        }
                        if (!(std::abs(fine - r) < std::abs(coarse - r))) {
                            detail = ss.str() + " not converging";
                            return false;
                        }
                    }
                    return true;
                });

    h.criterion(4, "co-area, level-set, symmetrization, oscillation checks on the 3x3 suite",
                180.0, [](std::string& detail) {
                    const SuiteResults& s = suite_results();
                    if (!s.error.empty()) {
                        detail = s.error;
                        return false;
                    }
                    detail = s.core_detail;
                    return s.core_pass;
                });

    h.criterion(5, "smoothed half-line nearly saturates the co-area bound (>= 0.95)", 10.0,
                [](std::string& detail) {
                    ModelMeasure m(2.0, 1);
                    SampledFunction f =
                        sample_function_stratified(m, halfline_ramp(1e-3), 1000000);
                    auto rep = check_ledoux(f, m.iso_profile(), CheckOptions{});
                    std::ostringstream ss;
                    ss << "lhs/rhs = " << rep.realized_constant;
                    detail = ss.str();
                    return rep.realized_constant >= 0.95 && rep.pass;
                });

    h.criterion(6, "median and level-set poincare pass; Linf verdict matches oscillation", 30.0,
                [](std::string& detail) {
                    const SuiteResults& s = suite_results();
                    if (!s.error.empty()) {
                        detail = s.error;
                        return false;
                    }
                    detail = s.six_detail;
                    return s.median_pass && s.ls_pass && s.linf_agrees;
                });

    h.criterion(7, "embedding and concentration constants are dimension-stable (factor <= 2)",
                30.0, [](std::string& detail) {
                    const SuiteResults& s = suite_results();
                    if (!s.error.empty()) {
                        detail = s.error;
                        return false;
                    }
                    bool a = spread_within_factor_two(s.lp_logl_const_by_dim, detail, "lp_logl");
                    bool b = spread_within_factor_two(s.concentration_by_dim, detail,
                                                      "concentration");
                    return a && b;
                });

    h.criterion(8, "embedding constant on constants equals Gamma(1+p/q) (p=2, r=2 -> 1)", 5.0,
                [](std::string& detail) {
                    SampledFunction f({{1.0, 0.0, 0.5}, {1.0, 0.0, 0.5}}, "const");
                    auto rep2 = check_lp_loglq(f, ModelMeasure(2.0).iso_profile(), 2.0,
                                               CheckOptions{});
                    std::ostringstream ss;
                    ss << "realized(r=2) = " << rep2.realized_constant;
                    detail = ss.str();
                    if (std::abs(rep2.realized_constant - 1.0) > 1e-4) return false;
                    ModelMeasure m(1.5);
                    auto rep15 =
                        check_lp_loglq(f, m.iso_profile(), 2.0, CheckOptions{});
                    double expect = boost::math::tgamma(1.0 + 2.0 / m.conjugate());
                    return std::abs(rep15.realized_constant - expect) <= 1e-4;
                });

    h.criterion(9, "hardy kernel: L1->L1 exponential-profile tester reproduces 1/2", 10.0,
                [](std::string& detail) {
                    IsoProfile I = ModelMeasure(1.0).iso_profile();
                    std::vector<QuantileFunction> testers{indicator_tester(0.5)};
                    auto rep = check_hardy_condition(I, RINormSpec::parse("L1"),
                                                     RINormSpec::parse("L1"), testers,
                                                     CheckOptions{});
                    std::ostringstream ss;
                    ss << "lhs = " << rep.lhs;
                    detail = ss.str();
                    return std::abs(rep.lhs - 0.5) <= 1e-6;
                });

    h.criterion(10, "discrete brute force and fine-grid perimeters track the profiles", 30.0,
                [](std::string& detail) {
                    // 12 buckets = half-line mass spacing: each interior
                    // bucket's minimizer is then a genuine half-line instead
                    // of a multi-boundary set claiming an off-grid mass cell
                    ModelMeasure m1(1.0, 1);
                    auto grid = model_grid(m1, 12, 0.80);
                    auto pts = iso_profile_bruteforce(grid, 12);
                    int interior = 0;
                    for (const auto& p : pts) {
                        if (p.mass < 0.2 || p.mass > 0.8) continue;
                        ++interior;
                        double ref = std::min(p.mass, 1.0 - p.mass);
                        if (std::abs(p.perimeter / ref - 1.0) > 0.10) {
                            std::ostringstream ss;
                            ss << "12-point grid off at mass " << p.mass << ": perimeter "
                               << p.perimeter << " vs " << ref;
                            detail = ss.str();
                            return false;
                        }
                    }
                    if (interior < 5) {
                        detail = "too few interior profile points";
                        return false;
                    }

                    ModelMeasure m2(2.0, 1);
                    const double spacing = 1e-3, halfwidth = 2.0;
                    auto n = static_cast<std::size_t>(std::lround(2 * halfwidth / spacing)) + 1;
                    auto fine = model_grid(m2, n, halfwidth);
                    for (double a : {0.0, 0.5, 1.0}) {
                        std::vector<std::uint8_t> A(n, 0);
                        for (std::size_t i = 0; i < n; ++i)
                            A[i] = fine.coord(i) <= a ? 1 : 0;
                        double per = perimeter_h(fine, A);
                        double ref = std::exp(-a * a) / std::sqrt(std::numbers::pi);
                        if (std::abs(per / ref - 1.0) > 0.02) {
                            std::ostringstream ss;
                            ss << "half-line at " << a << ": " << per << " vs " << ref;
                            detail = ss.str();
                            return false;
                        }
                    }
                    return true;
                });

    h.criterion(11, "zeroed gradients are caught: checks fail and the tool exits nonzero", 60.0,
                [](std::string& detail) {
                    ModelMeasure m(2.0, 1);
                    SampledFunction f = with_zeroed_gradients(
                        sample_function(m, halfline_ramp(0.1), 20000, 7));
                    IsoProfile I = m.iso_profile().tabulated();
                    if (check_main(f, I, CheckOptions{}).pass) {
                        detail = "oscillation check accepted corrupted data";
                        return false;
                    }
                    if (check_ledoux(f, I, CheckOptions{}).pass) {
                        detail = "co-area check accepted corrupted data";
                        return false;
                    }
                    std::string cmd = std::string(ISOPERIM_CLI_PATH) +
                                      " verify --r 2 --dim 1 --points 3000 --seed 7"
                                      " --zero-gradients >/dev/null 2>&1";
                    int status = std::system(cmd.c_str());
                    int code = WEXITSTATUS(status);
                    if (code != 1) { // 1 = checks failed; 2 would mean a crash
                        std::ostringstream ss;
                        ss << "cli exit code " << code << ", want 1";
                        detail = ss.str();
                        return false;
                    }
                    return true;
                });

    std::printf("%d/11 criteria passed\n", 11 - h.failures);
    return h.failures;
}
