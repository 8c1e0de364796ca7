#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace isoperim {

/// One atom of an empirical pair (f, |grad f|): function value, local
/// gradient modulus, point mass.
struct Sample {
    double value;
    double grad;
    double weight;
};

/// A function (with gradient modulus) sampled on a probability space,
/// represented by weighted atoms. Construction validates: entries nonempty,
/// all fields finite, grad >= 0, weight > 0, and total mass 1 within 1e-12
/// (compensated summation -- a million-atom batch must not eat the budget).
class SampledFunction {
public:
    explicit SampledFunction(std::vector<Sample> entries, std::string label = {});

    std::size_t size() const { return entries_.size(); }
    const Sample& operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Sample> entries() const { return entries_; }
    const std::string& label() const { return label_; }

    /// max(1, max |value|, max grad): the natural magnitude for absolute
    /// tolerances.
    double scale() const { return scale_; }

    double weighted_mean() const;

    /// Same atoms with values shifted by -weighted_mean (grads, weights kept).
    SampledFunction centered() const;

    /// Atoms i with i % stride == offset, weights renormalized to mass 1.
    /// Used for block resampling; requires at least one atom per block.
    SampledFunction block(std::size_t offset, std::size_t stride) const;

private:
    std::vector<Sample> entries_;
    std::string label_;
    double scale_ = 1.0;
};

} // namespace isoperim
