#include "isoperim/quantile_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "isoperim/numeric.hpp"

namespace isoperim {

QuantileFunction::QuantileFunction(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
    if (values_.empty() || breaks_.size() != values_.size() + 1)
        throw std::invalid_argument("QuantileFunction: need m+1 breaks for m values");
    if (breaks_.front() != 0.0)
        throw std::invalid_argument("QuantileFunction: first break must be 0");
    if (std::abs(breaks_.back() - 1.0) > 1e-9)
        throw std::invalid_argument("QuantileFunction: last break must be 1");
    breaks_.back() = 1.0;
    for (std::size_t j = 0; j + 1 < breaks_.size(); ++j)
        if (!(breaks_[j] < breaks_[j + 1]))
            throw std::invalid_argument("QuantileFunction: breaks must increase strictly");
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j]) || values_[j] < 0.0)
            throw std::invalid_argument("QuantileFunction: values must be finite and >= 0");
        if (j > 0 && values_[j] > values_[j - 1])
            throw std::invalid_argument("QuantileFunction: values must be nonincreasing");
    }
    prefix_.resize(breaks_.size());
    prefix_[0] = 0.0;
    KahanSum acc;
    for (std::size_t j = 0; j < values_.size(); ++j) {
        acc.add(values_[j] * (breaks_[j + 1] - breaks_[j]));
        prefix_[j + 1] = acc.value();
    }
}

double QuantileFunction::value_at(double s) const {
    if (!(s > 0.0 && s <= 1.0))
        throw std::domain_error("QuantileFunction::value_at: s must lie in (0,1]");
    if (s == 1.0) return values_.back();
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    return values_[std::size_t(it - breaks_.begin()) - 1];
}

double QuantileFunction::integral_to(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("QuantileFunction::integral_to: t must lie in [0,1]");
    if (t >= 1.0) return prefix_.back();
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    std::size_t j = std::size_t(it - breaks_.begin()) - 1;
    return prefix_[j] + values_[j] * (t - breaks_[j]);
}

double QuantileFunction::average_to(double t) const {
    if (!(t > 0.0 && t <= 1.0))
        throw std::domain_error("QuantileFunction::average_to: t must lie in (0,1]");
    return integral_to(t) / t;
}

} // namespace isoperim
