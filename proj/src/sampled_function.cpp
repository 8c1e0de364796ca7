#include "isoperim/sampled_function.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "isoperim/numeric.hpp"

namespace isoperim {

SampledFunction::SampledFunction(std::vector<Sample> entries, std::string label)
    : entries_(std::move(entries)), label_(std::move(label)) {
    if (entries_.empty())
        throw std::invalid_argument("SampledFunction: no atoms");
    KahanSum mass;
    for (const Sample& s : entries_) {
        if (!std::isfinite(s.value) || !std::isfinite(s.grad) || !std::isfinite(s.weight))
            throw std::invalid_argument("SampledFunction: non-finite entry");
        if (s.grad < 0.0)
            throw std::invalid_argument("SampledFunction: negative gradient modulus");
        if (s.weight <= 0.0)
            throw std::invalid_argument("SampledFunction: weights must be positive");
        mass.add(s.weight);
        scale_ = std::max({scale_, std::abs(s.value), s.grad});
    }
    if (std::abs(mass.value() - 1.0) > 1e-12)
        throw std::invalid_argument("SampledFunction: weights must sum to 1 (within 1e-12)");
}

double SampledFunction::weighted_mean() const {
    KahanSum s;
    for (const Sample& e : entries_) s.add(e.weight * e.value);
    return s.value();
}

SampledFunction SampledFunction::centered() const {
    const double m = weighted_mean();
    std::vector<Sample> out(entries_);
    for (Sample& e : out) e.value -= m;
    return SampledFunction(std::move(out), label_.empty() ? label_ : label_ + " (centered)");
}

SampledFunction SampledFunction::block(std::size_t offset, std::size_t stride) const {
    if (stride == 0 || offset >= stride)
        throw std::invalid_argument("SampledFunction::block: bad stride/offset");
    std::vector<Sample> out;
    out.reserve(entries_.size() / stride + 1);
    KahanSum mass;
    for (std::size_t i = offset; i < entries_.size(); i += stride) {
        out.push_back(entries_[i]);
        mass.add(entries_[i].weight);
    }
    if (out.empty())
        throw std::invalid_argument("SampledFunction::block: empty block");
    const double total = mass.value();
    for (Sample& e : out) e.weight /= total;
    return SampledFunction(std::move(out), label_);
}

} // namespace isoperim
