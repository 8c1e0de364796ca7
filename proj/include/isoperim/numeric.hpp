#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace isoperim {

/// Neumaier compensated accumulator. Mass bookkeeping (weights, step
/// integrals) has to stay well below 1e-12 drift even for 1e6 terms, which
/// plain left-to-right summation does not guarantee.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

inline double sq(double x) { return x * x; }

} // namespace isoperim
