#include "isoperim/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "isoperim/numeric.hpp"

namespace isoperim::io {

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

bool parse_double(std::string_view cell, double& out)
{
    const char* b = cell.data();
    const char* e = b + cell.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    while (e > b && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r')) --e;
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc{} && p == e;
}

std::vector<std::string_view> split_row(std::string_view line)
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

nlohmann::ordered_json json_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

} // namespace

SampledFunction read_sampled_csv(std::istream& in, std::string label)
{
    std::vector<Sample> rows;
    std::string line;
    std::size_t columns = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_row(line);
        double v = 0.0;
        if (first && !parse_double(cells[0], v)) {
            first = false; // header line
            continue;
        }
        first = false;
        if (columns == 0) {
            columns = cells.size();
            if (columns < 1 || columns > 3)
                throw std::runtime_error("expected 1-3 CSV columns: value[,grad[,weight]]");
        } else if (cells.size() != columns) {
            throw std::runtime_error("inconsistent CSV column count");
        }
        Sample s{0.0, 0.0, 1.0};
        if (!parse_double(cells[0], s.value)) throw std::runtime_error("bad value cell: " + line);
        if (columns >= 2 && !parse_double(cells[1], s.grad))
            throw std::runtime_error("bad gradient cell: " + line);
        if (columns >= 3 && !parse_double(cells[2], s.weight))
            throw std::runtime_error("bad weight cell: " + line);
        rows.push_back(s);
    }
    if (rows.empty()) throw std::runtime_error("no data rows in CSV input");

    if (columns >= 3) {
        KahanSum total;
        for (const Sample& s : rows) {
            if (!(s.weight > 0.0)) throw std::runtime_error("weights must be positive");
            total.add(s.weight);
        }
        if (std::abs(total.value() - 1.0) > 1e-6)
            throw std::runtime_error("weights must sum to 1 within 1e-6");
        for (Sample& s : rows) s.weight /= total.value();
    } else {
        const double w = 1.0 / static_cast<double>(rows.size());
        for (Sample& s : rows) s.weight = w;
    }
    return SampledFunction(std::move(rows), std::move(label));
}

SampledFunction read_sampled_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_sampled_csv(in, path);
}

void write_sampled_csv(std::ostream& out, const SampledFunction& f)
{
    out << "value,grad,weight\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Sample& s = f[i];
        out << format_double(s.value) << ',' << format_double(s.grad) << ','
            << format_double(s.weight) << '\n';
    }
}

void write_quantile_csv(std::ostream& out, const QuantileFunction& q)
{
    out << "break,value\n";
    for (std::size_t i = 0; i < q.pieces(); ++i)
        out << format_double(q.breaks()[i]) << ',' << format_double(q.values()[i]) << '\n';
}

void write_profile_csv(std::ostream& out, const IsoProfile& profile,
                       std::span<const double> ts)
{
    out << "t,profile\n";
    for (double t : ts)
        out << format_double(t) << ',' << format_double(profile(t)) << '\n';
}

std::string reports_to_json(std::span<const InequalityReport> reports)
{
    nlohmann::ordered_json root;
    root["schema"] = 1;
    auto& list = root["reports"] = nlohmann::ordered_json::array();
    for (const InequalityReport& r : reports) {
        nlohmann::ordered_json j;
        j["checker"] = r.checker;
        j["subject"] = r.subject;
        j["lhs"] = json_number(r.lhs);
        j["rhs"] = json_number(r.rhs);
        j["margin"] = json_number(r.margin);
        j["realized_constant"] = json_number(r.realized_constant);
        j["worst_t"] = json_number(r.worst_t);
        j["pass"] = r.pass;
        j["statistical"] = r.statistical;
        j["stat_allowance"] = json_number(r.stat_allowance);
        j["divergent"] = r.divergent;
        j["note"] = r.note;
        list.push_back(std::move(j));
    }
    return root.dump(2) + "\n";
}

} // namespace isoperim::io
