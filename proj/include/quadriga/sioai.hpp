#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadriga/digit_source.hpp"
#include "quadriga/pmf.hpp"
#include "quadriga/rational.hpp"

namespace quadriga {

// Closed, data-driven family of stochastic input-output machines: an
// acceptance rule describing the prefix-free accepted set, a main function
// mapping (digit string, input) to an output, and a stopping bound.

struct AcceptanceRule {
    enum class Kind { FixedLength, StopSymbol, ExplicitSet };
    Kind kind = Kind::FixedLength;
    int length = 1;                     // FixedLength
    int symbol = 1;                     // StopSymbol
    std::vector<std::string> members;   // ExplicitSet
};

struct MainFn {
    enum class Kind { Digits, LengthDecimal, Const, Table };
    Kind kind = Kind::Digits;
    std::map<std::string, std::string> const_values;  // Const: input -> output
    // Table: input -> (digit string -> output); a missing entry on an
    // accepted string means the main function diverges there.
    std::map<std::string, std::map<std::string, std::string>> table;
};

struct StopBound {
    enum class Kind { Formula, Table };
    Kind kind = Kind::Formula;
    // Table: input -> per-k depths (index = k).
    std::map<std::string, std::vector<int>> depths;
};

class SioAi {
public:
    SioAi(int radix, std::vector<std::string> domain, AcceptanceRule acceptance, MainFn main,
          StopBound stop);

    static SioAi from_json_text(const std::string& text);
    static SioAi from_json_file(const std::string& path);

    int radix() const { return radix_; }
    const std::vector<std::string>& domain() const { return domain_; }
    bool in_domain(const std::string& x) const;

    // Membership of u in the accepted set T_x.
    bool accepts(const std::string& u, const std::string& x) const;
    // Main function value; nullopt models divergence.
    std::optional<std::string> main_output(const std::string& u, const std::string& x) const;

    // Depth after which the unaccounted acceptance probability is <= 2^-k.
    int stop_depth(const std::string& x, int k) const;

    // Intended operation: draw digits until the string is accepted. The
    // draw budget 4*stop_depth(x,20) guards against a broken stopping bound.
    std::string sample(const std::string& x, DigitSource& rng) const;

    // 1 - sum over accepted u with |u| <= depth of radix^-|u| (exact).
    Rational kraft_deficit(const std::string& x, int depth) const;

    // Partial sum S_N(y|x) with N = stop_depth(x, k); within 2^-k of Q(y|x).
    DyadicApprox pmf_approx(const std::string& x, const std::string& y, int k) const;

    // Enumerates accepted strings with |u| <= max_len. The visit count is
    // guarded (depth-too-large beyond 10^7 nodes).
    void for_each_accepted(const std::string& x, int max_len,
                           const std::function<void(const std::string&)>& fn) const;

    // Distinct outputs reachable within stop_depth(x, k), sorted.
    std::vector<std::string> outputs_within(const std::string& x, int k) const;

    // Throws if an accepted string (up to the probe depth) is a proper
    // prefix of another accepted string.
    void validate_prefix_free(const std::string& x, int depth) const;

    CondPmfPtr pmf() const;

private:
    void check_domain(const std::string& x) const;

    int radix_;
    std::vector<std::string> domain_;
    AcceptanceRule acceptance_;
    MainFn main_;
    StopBound stop_;
};

}  // namespace quadriga
