#include "quadriga/pmf.hpp"

#include <algorithm>

#include "quadriga/error.hpp"

namespace quadriga {

namespace {

class ListedOrder : public OutputOrder {
public:
    explicit ListedOrder(std::vector<std::string> outputs) : outputs_(std::move(outputs)) {
        for (std::size_t i = 0; i < outputs_.size(); ++i) index_[outputs_[i]] = i;
        if (index_.size() != outputs_.size())
            raise(ErrorKind::Parameter, "output order contains duplicates");
    }
    std::optional<std::string> at(std::size_t j) const override {
        if (j >= outputs_.size()) return std::nullopt;
        return outputs_[j];
    }
    std::optional<std::size_t> index_of(const std::string& y) const override {
        auto it = index_.find(y);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::size_t> size() const override { return outputs_.size(); }

private:
    std::vector<std::string> outputs_;
    std::map<std::string, std::size_t> index_;
};

class ShortlexBinaryOrder : public OutputOrder {
public:
    std::optional<std::string> at(std::size_t j) const override {
        // Strings of length l occupy indices [2^l - 1, 2^(l+1) - 1).
        std::size_t l = 0, base = 0;
        while (j >= base + (std::size_t{1} << l)) {
            base += std::size_t{1} << l;
            ++l;
            if (l > 62) raise(ErrorKind::Parameter, "shortlex index too large");
        }
        const std::size_t v = j - base;
        std::string s(l, '0');
        for (std::size_t i = 0; i < l; ++i)
            if (v & (std::size_t{1} << (l - 1 - i))) s[i] = '1';
        return s;
    }
    std::optional<std::size_t> index_of(const std::string& y) const override {
        if (y.size() > 62) return std::nullopt;
        std::size_t v = 0;
        for (char c : y) {
            if (c != '0' && c != '1') return std::nullopt;
            v = (v << 1) | static_cast<std::size_t>(c - '0');
        }
        return ((std::size_t{1} << y.size()) - 1) + v;
    }
    std::optional<std::size_t> size() const override { return std::nullopt; }
};

class DecimalOrder : public OutputOrder {
public:
    explicit DecimalOrder(unsigned long first) : first_(first) {}
    std::optional<std::string> at(std::size_t j) const override {
        return std::to_string(first_ + j);
    }
    std::optional<std::size_t> index_of(const std::string& y) const override {
        if (y.empty() || (y.size() > 1 && y[0] == '0')) return std::nullopt;
        unsigned long v = 0;
        for (char c : y) {
            if (c < '0' || c > '9') return std::nullopt;
            if (v > (std::numeric_limits<unsigned long>::max() - 9) / 10) return std::nullopt;
            v = v * 10 + static_cast<unsigned long>(c - '0');
        }
        if (v < first_) return std::nullopt;
        return v - first_;
    }
    std::optional<std::size_t> size() const override { return std::nullopt; }

private:
    unsigned long first_;
};

}  // namespace

OutputOrderPtr lexicographic_order(std::vector<std::string> outputs) {
    std::sort(outputs.begin(), outputs.end());
    outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
    return std::make_shared<ListedOrder>(std::move(outputs));
}

OutputOrderPtr listed_order(std::vector<std::string> outputs) {
    return std::make_shared<ListedOrder>(std::move(outputs));
}

OutputOrderPtr shortlex_binary_order() { return std::make_shared<ShortlexBinaryOrder>(); }

OutputOrderPtr decimal_order(unsigned long first) { return std::make_shared<DecimalOrder>(first); }

TablePmf::TablePmf(std::map<std::string, Rational> masses) : shared_(true) {
    per_input_[""] = std::move(masses);
    for (const auto& [y, m] : per_input_.at("")) {
        if (m < 0) raise(ErrorKind::Parameter, "negative mass at output " + y);
    }
}

TablePmf::TablePmf(std::map<std::string, std::map<std::string, Rational>> per_input)
    : per_input_(std::move(per_input)) {
    for (const auto& [x, table] : per_input_)
        for (const auto& [y, m] : table)
            if (m < 0) raise(ErrorKind::Parameter, "negative mass at output " + y);
}

const std::map<std::string, Rational>& TablePmf::table_for(const std::string& x) const {
    if (shared_) return per_input_.at("");
    auto it = per_input_.find(x);
    if (it == per_input_.end()) raise(ErrorKind::Parameter, "input not in pmf table: " + x);
    return it->second;
}

DyadicApprox TablePmf::approx(const std::string& x, const std::string& y, int) const {
    auto v = exact_mass(x, y);
    return DyadicApprox::exact(*v);
}

std::optional<Rational> TablePmf::exact_mass(const std::string& x, const std::string& y) const {
    const auto& table = table_for(x);
    auto it = table.find(y);
    return it == table.end() ? Rational(0) : it->second;
}

std::optional<std::vector<std::string>> TablePmf::support_hint(const std::string& x) const {
    return outputs(x);
}

std::vector<std::string> TablePmf::outputs(const std::string& x) const {
    std::vector<std::string> out;
    for (const auto& [y, m] : table_for(x))
        if (m > 0) out.push_back(y);
    return out;
}

GeometricPmf::GeometricPmf(Rational p) : p_(std::move(p)) {
    if (p_ <= 0 || p_ >= 1) raise(ErrorKind::Parameter, "geometric parameter must be in (0,1)");
}

std::optional<Rational> GeometricPmf::exact_mass(const std::string&, const std::string& y) const {
    auto idx = decimal_order(1)->index_of(y);
    if (!idx) return Rational(0);
    Rational mass = p_;
    Rational miss = 1 - p_;
    for (std::size_t i = 0; i < *idx; ++i) mass *= miss;
    return mass;
}

DyadicApprox GeometricPmf::approx(const std::string& x, const std::string& y, int) const {
    return DyadicApprox::exact(*exact_mass(x, y));
}

Rational TelescopePmf::mass_at_index(const BigInt& j) { return Rational(1, (j + 1) * (j + 2)); }

std::optional<Rational> TelescopePmf::exact_mass(const std::string&, const std::string& y) const {
    auto idx = shortlex_binary_order()->index_of(y);
    if (!idx) return Rational(0);
    return mass_at_index(BigInt(*idx));
}

DyadicApprox TelescopePmf::approx(const std::string& x, const std::string& y, int) const {
    return DyadicApprox::exact(*exact_mass(x, y));
}

std::optional<int> certify_positive(const CondPmf& pmf, const std::string& x, const std::string& y,
                                    int max_k) {
    for (int k = 0; k <= max_k; ++k) {
        if (compare_with_margin(pmf.approx(x, y, k), 0) == Certainty::CertainlyAbove) return k;
    }
    return std::nullopt;
}

Interval certified_neg_log2_mass(const CondPmf& pmf, const std::string& x, const std::string& y,
                                 int prec, bool& infinite) {
    infinite = false;
    if (auto exact = pmf.exact_mass(x, y)) {
        if (*exact == 0) {
            infinite = true;
            return {0, 0};
        }
        return neg_log2_bounds(*exact, prec);
    }
    auto k0 = certify_positive(pmf, x, y, 64);
    if (!k0)
        raise(ErrorKind::Precision, "cannot certify positive mass at (" + x + ", " + y + ")");
    DyadicApprox probe = pmf.approx(x, y, *k0);
    const Rational lower0 = probe.value - probe.err;  // > 0
    const int mag = static_cast<int>(-floor_log2(lower0));
    const int k = prec + std::max(0, mag) + 2;
    DyadicApprox a = pmf.approx(x, y, k);
    Rational lo_mass = a.value - a.err;
    Rational hi_mass = a.value + a.err;
    if (lo_mass <= 0) lo_mass = lower0;
    if (hi_mass > 1) hi_mass = 1;
    Interval hi_log = neg_log2_bounds(lo_mass, prec);
    Interval lo_log = neg_log2_bounds(hi_mass, prec);
    return {lo_log.lo, hi_log.hi};
}

}  // namespace quadriga
