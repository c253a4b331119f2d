#pragma once

#include <string>
#include <vector>

#include "quadriga/pmf.hpp"

namespace quadriga {

// One constructed code word: k* digits of the rounded cumulative value.
struct SfeCode {
    std::string code;     // c_{y|x}, |code| == kstar
    int kstar = 0;        // digit count
    Rational cdf_lower;   // the rounded value c_i
    std::size_t y_index;  // index of y in the enumeration order
};

struct SfeOutcomeReport {
    std::string y;
    int kstar;
    // Certified lower bound on (-log2 Q(y|x) + 4 - |code|); nonnegative by
    // the length-bound contract.
    Rational slack_lo;
};

struct SfeVerifyReport {
    bool prefix_free = false;
    Rational max_slack = 0;
    Rational min_slack = 0;
    std::vector<int> lengths;
    std::vector<SfeOutcomeReport> outcomes;
};

struct SfeOptions {
    int max_k = 64;                  // precision cap for the k* search
    std::size_t decode_budget = 4096;  // candidate indices scanned by decode
};

// Prefix-free coder for one conditioned pmf Q(.|x) under a pinned output
// enumeration. Codes are fully determined by (pmf evaluator, order).
class SfeCodec {
public:
    SfeCodec(CondPmfPtr pmf, std::string x, OutputOrderPtr order, SfeOptions options = {});

    // Builds the code word for y. Raises zero-mass if positivity cannot be
    // certified (including outcomes beyond the 1 - 2^-32 tail cutoff) and
    // precision-cap if k* exceeds the cap for a certified-positive mass.
    SfeCode encode(const std::string& y) const;
    SfeCode encode_index(std::size_t index) const;

    // Scans the enumeration, rebuilding candidate codes until one is a
    // prefix of the stream; returns (y, remainder). The non-halting branch
    // is surfaced as invalid-code.
    std::pair<std::string, std::string> decode(const std::string& stream) const;

    SfeVerifyReport verify(const std::vector<std::string>& support) const;

    const OutputOrder& order() const { return *order_; }

private:
    // Approximation of the cumulative mass F_i with error <= 2^-k.
    DyadicApprox cumulative(std::size_t i, int k) const;
    int find_kstar(std::size_t index) const;

    CondPmfPtr pmf_;
    std::string x_;
    OutputOrderPtr order_;
    SfeOptions options_;
};

}  // namespace quadriga
