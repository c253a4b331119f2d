#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quadriga/dyadic.hpp"

namespace quadriga {

// A deterministic enumeration of candidate outputs. Cumulative sums (and so
// every code) depend on it, so it is always an explicit object.
class OutputOrder {
public:
    virtual ~OutputOrder() = default;
    // j-th output, or nullopt past the end of a finite order.
    virtual std::optional<std::string> at(std::size_t j) const = 0;
    virtual std::optional<std::size_t> index_of(const std::string& y) const = 0;
    // nullopt = infinite
    virtual std::optional<std::size_t> size() const = 0;
};

using OutputOrderPtr = std::shared_ptr<const OutputOrder>;

// Sorted-unique explicit list (lexicographic by default construction).
OutputOrderPtr lexicographic_order(std::vector<std::string> outputs);
// Explicit list in the given order.
OutputOrderPtr listed_order(std::vector<std::string> outputs);
// "", "0", "1", "00", "01", ... (length, then lexicographic).
OutputOrderPtr shortlex_binary_order();
// "first", "first+1", ... as decimal strings.
OutputOrderPtr decimal_order(unsigned long first = 0);

// A conditional probability mass function Q(y|x) available to arbitrary
// precision; exact_mass is an optional fast path when the value is an exact
// rational.
class CondPmf {
public:
    virtual ~CondPmf() = default;
    // Value within 2^-k of Q(y|x).
    virtual DyadicApprox approx(const std::string& x, const std::string& y, int k) const = 0;
    virtual std::optional<Rational> exact_mass(const std::string& x, const std::string& y) const {
        return std::nullopt;
    }
    virtual std::optional<std::vector<std::string>> support_hint(const std::string& x) const {
        return std::nullopt;
    }
};

using CondPmfPtr = std::shared_ptr<const CondPmf>;

// Exact finite table, same table for every input unless per-input entries
// are provided.
class TablePmf : public CondPmf {
public:
    explicit TablePmf(std::map<std::string, Rational> masses);
    TablePmf(std::map<std::string, std::map<std::string, Rational>> per_input);

    DyadicApprox approx(const std::string& x, const std::string& y, int k) const override;
    std::optional<Rational> exact_mass(const std::string& x, const std::string& y) const override;
    std::optional<std::vector<std::string>> support_hint(const std::string& x) const override;

    // Keys in lexicographic order.
    std::vector<std::string> outputs(const std::string& x) const;

private:
    const std::map<std::string, Rational>& table_for(const std::string& x) const;
    std::map<std::string, std::map<std::string, Rational>> per_input_;
    bool shared_ = false;
};

// Geometric law: an output parsing as decimal v >= 1 has mass p*(1-p)^(v-1);
// anything else has mass 0.
class GeometricPmf : public CondPmf {
public:
    explicit GeometricPmf(Rational p);
    DyadicApprox approx(const std::string& x, const std::string& y, int k) const override;
    std::optional<Rational> exact_mass(const std::string& x, const std::string& y) const override;
    Rational success() const { return p_; }

private:
    Rational p_;
};

// Telescoping law over the shortlex-binary enumeration: the output with
// index j has mass 1/((j+1)(j+2)). Full support, masses sum to 1.
class TelescopePmf : public CondPmf {
public:
    DyadicApprox approx(const std::string& x, const std::string& y, int k) const override;
    std::optional<Rational> exact_mass(const std::string& x, const std::string& y) const override;
    static Rational mass_at_index(const BigInt& j);
};

// Certify Q(y|x) > 0 by refining until the approximation clears zero.
// Returns the certifying accuracy, or nullopt if max_k is reached first.
std::optional<int> certify_positive(const CondPmf& pmf, const std::string& x, const std::string& y,
                                    int max_k);

// Certified bounds on -log2 Q(y|x), width ~2^-prec. Sets `infinite` instead
// when the mass is exactly zero; raises precision if positivity cannot be
// certified for an approximate evaluator.
Interval certified_neg_log2_mass(const CondPmf& pmf, const std::string& x, const std::string& y,
                                 int prec, bool& infinite);

}  // namespace quadriga
