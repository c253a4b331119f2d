#pragma once

#include <functional>
#include <limits>

#include "quadriga/rational.hpp"

namespace quadriga {

// A rational value with a certified error bound: |value - true| <= err.
// The error budget is kept exact; accuracy_exp() reports the guaranteed
// 2^-k contract (the largest such k).
struct DyadicApprox {
    Rational value;
    Rational err;  // >= 0

    static constexpr int kExact = std::numeric_limits<int>::max();

    static DyadicApprox exact(Rational v) { return DyadicApprox{std::move(v), 0}; }
    static DyadicApprox with_accuracy(Rational v, int k) { return DyadicApprox{std::move(v), pow2(-k)}; }

    bool is_exact() const { return err == 0; }
    // Largest k with err <= 2^-k; may be negative for budgets above 1.
    int accuracy_exp() const {
        if (err == 0) return kExact;
        return static_cast<int>(-ceil_log2(err));
    }
    Rational lower() const { return value - err; }
    Rational upper() const { return value + err; }
    Interval interval() const { return {lower(), upper()}; }
};

enum class Certainty { CertainlyAbove, CertainlyBelow, Undecided };

// Error budgets add exactly.
DyadicApprox approx_add(const DyadicApprox& a, const DyadicApprox& b);

// Certified three-way comparison against an exact threshold.
Certainty compare_with_margin(const DyadicApprox& a, const Rational& threshold);

// A deterministic arbitrary-precision approximation routine for one real
// value: eval(k) is within 2^-k of the target.
using Approximator = std::function<DyadicApprox(int k)>;

}  // namespace quadriga
