#include "quadriga/environment.hpp"

#include <tuple>

#include "quadriga/error.hpp"

namespace quadriga {

void FiniteEnvironment::validate() const {
    Rational total = 0;
    for (const auto& [x, p] : inputs) {
        if (p < 0) raise(ErrorKind::Parameter, "negative input mass at \"" + x + "\"");
        total += p;
        if (!cond.count(x)) raise(ErrorKind::Parameter, "no conditional for input \"" + x + "\"");
    }
    if (total != 1)
        raise(ErrorKind::Parameter, "input distribution sums to " + rational_to_string(total));
    for (const auto& [x, table] : cond) {
        Rational sum = 0;
        for (const auto& [y, p] : table) {
            if (p < 0) raise(ErrorKind::Parameter, "negative mass at (" + x + ", " + y + ")");
            sum += p;
        }
        if (sum != 1)
            raise(ErrorKind::Parameter,
                  "conditional for \"" + x + "\" sums to " + rational_to_string(sum));
    }
}

CondPmfPtr FiniteEnvironment::pmf() const {
    std::map<std::string, std::map<std::string, Rational>> per_input;
    for (const auto& [x, table] : cond) {
        auto& m = per_input[x];
        for (const auto& [y, p] : table) m[y] += p;
    }
    return std::make_shared<TablePmf>(std::move(per_input));
}

std::vector<std::tuple<std::string, std::string, Rational>> FiniteEnvironment::joint() const {
    std::vector<std::tuple<std::string, std::string, Rational>> out;
    for (const auto& [x, px] : inputs) {
        if (px == 0) continue;
        for (const auto& [y, pyx] : cond.at(x)) {
            if (pyx == 0) continue;
            out.emplace_back(x, y, px * pyx);
        }
    }
    return out;
}

LogExpectation expected_log_perplexity(const FiniteEnvironment& env, const CondPmf& model, int k) {
    env.validate();
    const int prec = k + 3;
    LogExpectation result;
    Interval sum{0, 0};
    for (const auto& [x, y, w] : env.joint()) {
        bool infinite = false;
        Interval term = certified_neg_log2_mass(model, x, y, prec, infinite);
        if (infinite) {
            result.infinite = true;
            return result;
        }
        sum += w * term;
    }
    if (sum.width() > 2 * pow2(-k))
        raise(ErrorKind::Precision, "expected log perplexity interval wider than contract");
    result.bits = sum;
    return result;
}

Interval conditional_entropy_bits(const FiniteEnvironment& env, int frac_bits) {
    env.validate();
    Interval sum{0, 0};
    for (const auto& [x, y, w] : env.joint()) {
        const Rational pyx = [&] {
            for (const auto& [yy, p] : env.cond.at(x))
                if (yy == y) return p;
            return Rational(0);
        }();
        sum += w * neg_log2_bounds(pyx, frac_bits);
    }
    return sum;
}

LogExpectation expected_kl_bits(const FiniteEnvironment& env, const CondPmf& model, int frac_bits) {
    env.validate();
    LogExpectation result;
    Interval sum{0, 0};
    for (const auto& [x, y, w] : env.joint()) {
        const Rational pyx = [&] {
            for (const auto& [yy, p] : env.cond.at(x))
                if (yy == y) return p;
            return Rational(0);
        }();
        // log2(p/q) with certified q bounds; ratio 1 contributes exactly 0.
        if (auto q = model.exact_mass(x, y)) {
            if (*q == 0) {
                result.infinite = true;
                return result;
            }
            if (pyx == *q) continue;
            sum += w * log2_bounds(pyx / *q, frac_bits);
            continue;
        }
        bool infinite = false;
        Interval neg_log_q = certified_neg_log2_mass(model, x, y, frac_bits, infinite);
        if (infinite) {
            result.infinite = true;
            return result;
        }
        Interval neg_log_p = neg_log2_bounds(pyx, frac_bits);
        sum += w * (neg_log_q - neg_log_p);
    }
    result.bits = sum;
    return result;
}

}  // namespace quadriga
