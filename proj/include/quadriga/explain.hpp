#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadriga/pmf.hpp"

namespace quadriga {

// Character set for explanations plus its prefix-free per-character code.
struct CharSet {
    std::string name;
    std::map<char, std::string> codes;
    int l_max = 0;

    // Printable ASCII (0x20..0x7e) with fixed 7-bit codes; L = 7.
    static const CharSet& printable_ascii();

    void validate() const;
    bool contains(char c) const { return codes.count(c) > 0; }
};

// Concatenated per-character codes; length <= l_max * |text|.
std::string encode_explanation(const std::string& text, const CharSet& cs);
std::string decode_explanation(const std::string& bits, const CharSet& cs);

// L*|e| + 2*ceil(log2(L*|e| + 1)): the explanation-side cost term, with the
// log replaced by its integer digit-count upper bound.
BigInt explanation_cost(const std::string& text, const CharSet& cs);

// ---------------------------------------------------------------------------
// Explanation language (interpreter id "pmf-dsl-v1"). One fixed computable
// interpreter turns an explanation string into an exact pmf:
//
//   expr  := "table{" k ":" rat ("," k ":" rat)* "}"    exact finite table
//          | "uniform{" k ("," k)* "}"                  equal mass on keys
//          | "geom{" rat "}"                            p(1-p)^(v-1), v = decimal(y) >= 1
//          | "telescope"                                1/((j+1)(j+2)), j = shortlex index
//          | "mix{" rat ":" expr ("," rat ":" expr)* "}"  renormalized mixture
//
// Keys are nonempty digit strings; rationals are "a/b" or "a"; no
// whitespace. Table masses must sum to 1; mixture components must be
// finite (table/uniform).
// ---------------------------------------------------------------------------

class ExplanationPmf : public CondPmf {
public:
    DyadicApprox approx(const std::string& x, const std::string& y, int k) const override;
    std::optional<Rational> exact_mass(const std::string& x, const std::string& y) const override;
    std::optional<std::vector<std::string>> support_hint(const std::string& x) const override;

    // The pinned enumeration the language induces: lexicographic keys for
    // finite terms, decimal-from-1 for geom, shortlex for telescope.
    OutputOrderPtr canonical_order() const { return order_; }
    const std::string& source() const { return source_; }

private:
    friend ExplanationPmf parse_explanation(const std::string& text);
    struct Term;
    std::shared_ptr<const Term> root_;
    OutputOrderPtr order_;
    std::string source_;
};

// Parses and validates an explanation; throws invalid-character /
// parameter errors on bad input.
ExplanationPmf parse_explanation(const std::string& text);

// The interpretation function: exact rational approximation of the
// explained pmf at `point`, valid for every accuracy k.
Rational interpret(const std::string& text, int k, const std::string& point);

inline constexpr const char* kInterpreterId = "pmf-dsl-v1";

struct FaithfulnessViolation {
    std::string point;
    int k = 0;
    Rational gap_lo;  // certified lower bound on |Interpret - f|
};

struct FaithfulnessReport {
    bool faithful = false;
    std::size_t points_checked = 0;
    int k_max = 0;
    std::optional<FaithfulnessViolation> violation;
    Rational max_violation = 0;  // certified; 0 when no violation was found
};

// Checks |Interpret(e, k, z) - f(z)| < 2^-k for every listed point and every
// k <= k_max against a reference evaluator queried at accuracy k_max + 2.
// A pass is evidence at the tested points only.
FaithfulnessReport verify_faithful(const std::string& text, const CondPmf& reference,
                                   const std::string& x, const std::vector<std::string>& points,
                                   int k_max);

}  // namespace quadriga
