#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quadriga/pmf.hpp"

namespace quadriga {

// A finite joint environment: exact input distribution and exact conditional
// tables, with a pinned enumeration order for the joint support.
struct FiniteEnvironment {
    std::vector<std::pair<std::string, Rational>> inputs;                       // pi
    std::map<std::string, std::vector<std::pair<std::string, Rational>>> cond;  // P(y|x)

    void validate() const;
    CondPmfPtr pmf() const;
    // Joint support in enumeration order, zero-mass pairs skipped.
    std::vector<std::tuple<std::string, std::string, Rational>> joint() const;
};

// Certified expectation of a log quantity, in bits. `infinite` models the
// convention that a zero model mass on the support makes the expectation
// +infinity.
struct LogExpectation {
    bool infinite = false;
    Interval bits{0, 0};

    DyadicApprox approx() const { return DyadicApprox{bits.mid(), bits.width() / 2}; }
};

// E[-log2 model(Y|X)] under the environment, certified to width <= 2*2^-k.
LogExpectation expected_log_perplexity(const FiniteEnvironment& env, const CondPmf& model, int k);

// H_P(Y|X) in bits, certified.
Interval conditional_entropy_bits(const FiniteEnvironment& env, int frac_bits);

// E_pi[ KL(P(.|X) || model(.|X)) ] in bits, certified.
LogExpectation expected_kl_bits(const FiniteEnvironment& env, const CondPmf& model, int frac_bits);

}  // namespace quadriga
