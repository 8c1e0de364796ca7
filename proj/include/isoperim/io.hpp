#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "isoperim/inequalities.hpp"
#include "isoperim/iso_profile.hpp"
#include "isoperim/quantile_function.hpp"
#include "isoperim/sampled_function.hpp"

namespace isoperim::io {

/// Shortest round-trip decimal for CSV cells ('%.17g' trimmed by from_chars
/// round-trip is overkill here: plain %.17g, '.' decimal point, no locale).
std::string format_double(double x);

/// CSV with 1-3 numeric columns: value[,grad[,weight]]. Missing gradients
/// default to 0, missing weights to uniform 1/n. An optional non-numeric
/// header line is skipped. Weights must total 1 within 1e-6 and are then
/// renormalized exactly; anything further off is an error.
SampledFunction read_sampled_csv(std::istream& in, std::string label);
SampledFunction read_sampled_csv_file(const std::string& path);

void write_sampled_csv(std::ostream& out, const SampledFunction& f);

/// Columns: break,value -- one row per step of the decreasing rearrangement.
void write_quantile_csv(std::ostream& out, const QuantileFunction& q);

/// Columns: t,profile -- the profile evaluated on the given grid.
void write_profile_csv(std::ostream& out, const IsoProfile& profile,
                       std::span<const double> ts);

/// Reports as {"schema":1,"reports":[...]} with fixed key order, so equal
/// inputs serialize to identical bytes. Non-finite values appear as the
/// strings "inf"/"-inf"/"nan" (JSON has no literals for them).
std::string reports_to_json(std::span<const InequalityReport> reports);

} // namespace isoperim::io
