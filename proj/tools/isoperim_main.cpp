// isoperim: measures, profiles, rearrangements, inequality certification.
//
// Exit codes: 0 success, 1 at least one inequality check failed, 2 usage or
// runtime error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isoperim/discrete_space.hpp"
#include "isoperim/grid.hpp"
#include "isoperim/inequalities.hpp"
#include "isoperim/io.hpp"
#include "isoperim/iso_profile.hpp"
#include "isoperim/model_measure.hpp"
#include "isoperim/rearrangement.hpp"
#include "isoperim/ri_norms.hpp"
#include "isoperim/test_functions.hpp"

namespace {

using namespace isoperim;

/// Stream to --out if given, stdout otherwise.
class OutStream {
public:
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }
    bool to_file() const { return file_.is_open(); }

private:
    std::ofstream file_;
};

int cmd_profile(double r, std::size_t grid, const std::string& out_path) {
    ModelMeasure measure(r, 1);
    IsoProfile profile = measure.iso_profile();
    const bool with_asym = r > 1.0;

    OutStream out(out_path);
    out.get() << "t,profile,asymptotic,ratio\n";
    for (double t : refined_grid(grid, 1e-8)) {
        double I = profile(t);
        out.get() << io::format_double(t) << ',' << io::format_double(I) << ',';
        if (with_asym) {
            double asym = measure.asymptotic_profile(t);
            out.get() << io::format_double(asym) << ',' << io::format_double(I / asym);
        } else {
            out.get() << ','; // q = inf: no log-power asymptote to compare with
        }
        out.get() << '\n';
    }
    return 0;
}

void print_report_csv(std::ostream& os, const std::vector<InequalityReport>& reports) {
    os << "checker,subject,lhs,rhs,margin,realized_constant,pass,statistical,divergent\n";
    for (const InequalityReport& rep : reports) {
        os << rep.checker << ',' << rep.subject << ',' << io::format_double(rep.lhs) << ','
           << io::format_double(rep.rhs) << ',' << io::format_double(rep.margin) << ','
           << io::format_double(rep.realized_constant) << ',' << (rep.pass ? 1 : 0) << ','
           << (rep.statistical ? 1 : 0) << ',' << (rep.divergent ? 1 : 0) << '\n';
    }
}

int cmd_verify(const SuiteConfig& cfg, const std::vector<std::string>& inputs,
               const std::string& out_path) {
    std::vector<InequalityReport> reports = run_inequality_suite(cfg);

    if (!inputs.empty()) {
        ModelMeasure measure(cfg.r, cfg.dim);
        IsoProfile profile = measure.iso_profile();
        if (cfg.profile_table_nodes > 0) profile = profile.tabulated(cfg.profile_table_nodes);
        for (const std::string& path : inputs) {
            SampledFunction f = io::read_sampled_csv_file(path);
            if (cfg.zero_gradients) f = with_zeroed_gradients(f);
            auto extra = run_checks(f, profile, cfg);
            reports.insert(reports.end(), extra.begin(), extra.end());
        }
    }

    OutStream out(out_path);
    out.get() << io::reports_to_json(reports);
    if (out.to_file()) print_report_csv(std::cout, reports);

    for (const InequalityReport& rep : reports)
        if (!rep.pass) return 1;
    return 0;
}

int cmd_oracle(double r, std::size_t points, double halfwidth, std::size_t buckets,
               const std::string& out_path) {
    ModelMeasure measure(r, 1);
    DiscreteMetricSpace grid = model_grid(measure, points, halfwidth);
    auto profile_pts = iso_profile_bruteforce(grid, buckets);
    IsoProfile continuum = measure.iso_profile();

    nlohmann::ordered_json root;
    root["schema"] = 1;
    root["space"] = {{"kind", "model_grid"},
                     {"r", r},
                     {"points", points},
                     {"halfwidth", halfwidth},
                     {"h", grid.h()}};
    auto& list = root["profile"] = nlohmann::ordered_json::array();
    for (const ProfilePoint& p : profile_pts) {
        double ref = continuum(p.mass);
        nlohmann::ordered_json row;
        row["mass"] = p.mass;
        row["perimeter"] = p.perimeter;
        row["continuum"] = ref;
        row["ratio"] = ref > 0.0 ? p.perimeter / ref : 0.0;
        row["subset"] = p.subset;
        list.push_back(std::move(row));
    }

    OutStream out(out_path);
    out.get() << root.dump(2) << '\n';
    return 0;
}

int cmd_rearrange(const std::string& in_path, const std::string& out_path) {
    SampledFunction f = io::read_sampled_csv_file(in_path);
    QuantileFunction q = rearrange(f);
    OutStream out(out_path);
    io::write_quantile_csv(out.get(), q);
    return 0;
}

int cmd_norms(const std::string& in_path, const std::vector<std::string>& specs,
              std::optional<double> r, const std::string& out_path) {
    SampledFunction f = io::read_sampled_csv_file(in_path);
    std::vector<std::string> wanted = specs;
    if (wanted.empty()) wanted = {"L1", "Lp:2", "Linf"};

    OutStream out(out_path);
    out.get() << "norm,value\n";
    for (const std::string& text : wanted) {
        RINormSpec spec = RINormSpec::parse(text);
        out.get() << spec.label() << ',' << io::format_double(norm(spec, f)) << '\n';
    }
    if (r) {
        // With a measure given, also report the level-set norms driven by its
        // profile: ||(f** - f*) I(t)/t||_X.
        IsoProfile profile = ModelMeasure(*r, 1).iso_profile().tabulated();
        for (const std::string& text : wanted) {
            RINormSpec spec = RINormSpec::parse(text);
            out.get() << "Ls:" << spec.label() << ','
                      << io::format_double(ls_norm(spec, f, profile)) << '\n';
        }
    }
    return 0;
}

int cmd_sample(double r, int dim, std::size_t points, std::uint64_t seed, bool stratified,
               const std::string& out_path) {
    ModelMeasure measure(r, dim);
    std::vector<double> pts =
        stratified ? measure.sample_stratified(points) : measure.sample(points, seed);

    OutStream out(out_path);
    for (int j = 0; j < dim; ++j) out.get() << (j ? ",x" : "x") << j;
    out.get() << '\n';
    for (std::size_t i = 0; i < points; ++i) {
        for (int j = 0; j < dim; ++j) {
            if (j) out.get() << ',';
            out.get() << io::format_double(pts[i * static_cast<std::size_t>(dim) +
                                               static_cast<std::size_t>(j)]);
        }
        out.get() << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rearrangement and isoperimetry toolkit for the exp(-|t|^r) measure family"};
    app.require_subcommand(1);

    double r = 2.0;
    int dim = 2;
    std::size_t points = 100000;
    std::uint64_t seed = 7;
    std::size_t grid = 256;
    double rel_tol = 1e-3;
    double abs_tol = 1e-9;
    double lp = 2.0;
    double halfwidth = 0.99;
    std::size_t buckets = 64;
    bool stratified = false;
    bool zero_gradients = false;
    std::vector<std::string> inputs;
    std::vector<std::string> norms_wanted;
    std::string out_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path (default: stdout)");
    };

    CLI::App* profile = app.add_subcommand(
        "profile", "tabulate the isoperimetric profile and its small-t asymptote");
    profile->add_option("--r", r, "shape parameter in [1,2]")->check(CLI::Range(1.0, 2.0));
    profile->add_option("--grid", grid, "grid nodes (>= 16)")->check(CLI::Range(16, 1 << 20));
    add_common(profile);

    CLI::App* verify =
        app.add_subcommand("verify", "run every inequality checker over the built-in family");
    verify->add_option("--r", r, "shape parameter in [1,2]")->check(CLI::Range(1.0, 2.0));
    verify->add_option("--dim", dim, "product dimension")->check(CLI::Range(1, 64));
    verify->add_option("--points", points, "sample size")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
    verify->add_option("--seed", seed, "sampling seed");
    verify->add_option("--grid", grid, "checker grid nodes (>= 16)")
        ->check(CLI::Range(16, 1 << 20));
    verify->add_option("--rel-tol", rel_tol, "relative slack for the verdicts");
    verify->add_option("--abs-tol", abs_tol, "absolute slack coefficient (times scale(f))");
    verify->add_option("--lp", lp, "exponent probed by the log-power embedding");
    verify->add_flag("--stratified", stratified, "midpoint-stratified draws (dim 1 only)");
    verify->add_flag("--zero-gradients", zero_gradients,
                     "corruption drill: wipe gradient data before checking");
    verify->add_option("--in", inputs, "extra sampled-function CSV files to check");
    add_common(verify);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "exhaustive discrete profile of a model-measure grid (n <= 22)");
    oracle->add_option("--r", r, "shape parameter in [1,2]")->check(CLI::Range(1.0, 2.0));
    oracle->add_option("--points", points, "grid points (n <= 22)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{22}));
    oracle->add_option("--halfwidth", halfwidth, "grid spans [-halfwidth, halfwidth]");
    oracle->add_option("--buckets", buckets, "measure buckets");
    add_common(oracle);

    CLI::App* rearr = app.add_subcommand(
        "rearrange", "decreasing rearrangement of a sampled-function CSV");
    rearr->add_option("--in", inputs, "input CSV (value[,grad[,weight]])")->required();
    add_common(rearr);

    CLI::App* norms_cmd =
        app.add_subcommand("norms", "rearrangement-invariant norms of a sampled-function CSV");
    norms_cmd->add_option("--in", inputs, "input CSV (value[,grad[,weight]])")->required();
    norms_cmd->add_option("--norm", norms_wanted,
                          "norm specs (L1 | Linf | Lp:p | Lorentz:p,q | LpLogL:p,a)");
    bool norms_r_set = false;
    norms_cmd->add_option("--r", r, "also report profile-weighted level-set norms")
        ->check(CLI::Range(1.0, 2.0))
        ->each([&](const std::string&) { norms_r_set = true; });
    add_common(norms_cmd);

    CLI::App* sample = app.add_subcommand("sample", "draw points from the model measure");
    sample->add_option("--r", r, "shape parameter in [1,2]")->check(CLI::Range(1.0, 2.0));
    sample->add_option("--dim", dim, "product dimension")->check(CLI::Range(1, 64));
    sample->add_option("--points", points, "sample size")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
    sample->add_option("--seed", seed, "sampling seed");
    sample->add_flag("--stratified", stratified, "midpoint-stratified draws (dim 1 only)");
    add_common(sample);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (profile->parsed()) return cmd_profile(r, grid, out_path);
        if (verify->parsed()) {
            SuiteConfig cfg;
            cfg.r = r;
            cfg.dim = dim;
            cfg.points = points;
            cfg.seed = seed;
            cfg.stratified = stratified;
            cfg.zero_gradients = zero_gradients;
            cfg.lp_exponent = lp;
            cfg.check.rel_tol = rel_tol;
            cfg.check.abs_tol_coeff = abs_tol;
            cfg.check.grid_nodes = grid;
            return cmd_verify(cfg, inputs, out_path);
        }
        if (oracle->parsed()) return cmd_oracle(r, points, halfwidth, buckets, out_path);
        if (rearr->parsed()) return cmd_rearrange(inputs.at(0), out_path);
        if (norms_cmd->parsed())
            return cmd_norms(inputs.at(0), norms_wanted,
                             norms_r_set ? std::optional<double>(r) : std::nullopt, out_path);
        if (sample->parsed()) return cmd_sample(r, dim, points, seed, stratified, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
