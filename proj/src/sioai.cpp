#include "quadriga/sioai.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "quadriga/alphabet.hpp"
#include "quadriga/error.hpp"

namespace quadriga {

namespace {

constexpr long kEnumerationGuard = 10'000'000;

// Visit count of the pruned acceptance tree for the given rule and depth.
long enumeration_cost(const AcceptanceRule& rule, int radix, int max_len) {
    switch (rule.kind) {
        case AcceptanceRule::Kind::FixedLength: {
            if (max_len < rule.length) return 0;
            long count = 1;
            for (int i = 0; i < rule.length; ++i) {
                count *= radix;
                if (count > kEnumerationGuard) return count;
            }
            return count;
        }
        case AcceptanceRule::Kind::StopSymbol: {
            // stop-free prefixes of each length, one accepted child each
            long total = 0, level = 1;
            for (int m = 1; m <= max_len; ++m) {
                total += level;
                if (total > kEnumerationGuard) return total;
                level *= radix - 1;
            }
            return total;
        }
        case AcceptanceRule::Kind::ExplicitSet:
            return static_cast<long>(rule.members.size());
    }
    return 0;
}

}  // namespace

SioAi::SioAi(int radix, std::vector<std::string> domain, AcceptanceRule acceptance, MainFn main,
             StopBound stop)
    : radix_(radix),
      domain_(std::move(domain)),
      acceptance_(std::move(acceptance)),
      main_(std::move(main)),
      stop_(std::move(stop)) {
    if (radix_ < 2 || radix_ > 10) raise(ErrorKind::Parameter, "radix must be in [2, 10]");
    if (domain_.empty()) raise(ErrorKind::Parameter, "domain must be nonempty");
    Alphabet alpha{radix_};
    switch (acceptance_.kind) {
        case AcceptanceRule::Kind::FixedLength:
            if (acceptance_.length < 0) raise(ErrorKind::Parameter, "fixed length must be >= 0");
            break;
        case AcceptanceRule::Kind::StopSymbol:
            if (acceptance_.symbol < 0 || acceptance_.symbol >= radix_)
                raise(ErrorKind::Parameter, "stop symbol outside radix");
            break;
        case AcceptanceRule::Kind::ExplicitSet: {
            // The set must be prefix-free and must carry full mass: Kraft sum
            // exactly 1, otherwise no stopping bound can exist.
            std::set<std::string> seen;
            Rational kraft = 0;
            for (const auto& u : acceptance_.members) {
                alpha.check(u);
                if (!seen.insert(u).second)
                    raise(ErrorKind::Parameter, "duplicate accepted string: \"" + u + "\"");
                kraft += Rational(1, boost::multiprecision::pow(BigInt(radix_), u.size()));
            }
            for (const auto& u : acceptance_.members) {
                for (std::size_t l = 0; l < u.size(); ++l) {
                    if (seen.count(u.substr(0, l)))
                        raise(ErrorKind::Parameter,
                              "accepted set is not prefix-free at \"" + u + "\"");
                }
            }
            if (kraft != 1)
                raise(ErrorKind::Parameter,
                      "explicit accepted set must satisfy Kraft equality, got " +
                          rational_to_string(kraft));
            break;
        }
    }
}

bool SioAi::in_domain(const std::string& x) const {
    return std::find(domain_.begin(), domain_.end(), x) != domain_.end();
}

void SioAi::check_domain(const std::string& x) const {
    if (!in_domain(x)) raise(ErrorKind::Parameter, "input not in machine domain: \"" + x + "\"");
}

bool SioAi::accepts(const std::string& u, const std::string& x) const {
    check_domain(x);
    Alphabet{radix_}.check(u);
    switch (acceptance_.kind) {
        case AcceptanceRule::Kind::FixedLength:
            return static_cast<int>(u.size()) == acceptance_.length;
        case AcceptanceRule::Kind::StopSymbol: {
            if (u.empty()) return false;
            const char stop = static_cast<char>('0' + acceptance_.symbol);
            if (u.back() != stop) return false;
            return u.find(stop) == u.size() - 1;
        }
        case AcceptanceRule::Kind::ExplicitSet:
            return std::find(acceptance_.members.begin(), acceptance_.members.end(), u) !=
                   acceptance_.members.end();
    }
    return false;
}

std::optional<std::string> SioAi::main_output(const std::string& u, const std::string& x) const {
    check_domain(x);
    switch (main_.kind) {
        case MainFn::Kind::Digits:
            return u;
        case MainFn::Kind::LengthDecimal:
            return std::to_string(u.size());
        case MainFn::Kind::Const: {
            auto it = main_.const_values.find(x);
            if (it == main_.const_values.end()) it = main_.const_values.find("");
            if (it == main_.const_values.end())
                raise(ErrorKind::Parameter, "no constant output for input \"" + x + "\"");
            return it->second;
        }
        case MainFn::Kind::Table: {
            auto xt = main_.table.find(x);
            if (xt == main_.table.end()) xt = main_.table.find("");
            if (xt == main_.table.end()) return std::nullopt;
            auto it = xt->second.find(u);
            if (it == xt->second.end()) return std::nullopt;  // divergence
            return it->second;
        }
    }
    return std::nullopt;
}

int SioAi::stop_depth(const std::string& x, int k) const {
    check_domain(x);
    if (k < 0) raise(ErrorKind::Parameter, "accuracy k must be >= 0");
    if (stop_.kind == StopBound::Kind::Table) {
        auto it = stop_.depths.find(x);
        if (it == stop_.depths.end()) it = stop_.depths.find("");
        if (it == stop_.depths.end() || k >= static_cast<int>(it->second.size()))
            raise(ErrorKind::Parameter, "stopping table has no entry for k=" + std::to_string(k));
        return it->second[static_cast<std::size_t>(k)];
    }
    switch (acceptance_.kind) {
        case AcceptanceRule::Kind::FixedLength:
            return acceptance_.length;
        case AcceptanceRule::Kind::ExplicitSet: {
            std::size_t m = 0;
            for (const auto& u : acceptance_.members) m = std::max(m, u.size());
            return static_cast<int>(m);
        }
        case AcceptanceRule::Kind::StopSymbol: {
            // smallest d with ((radix-1)/radix)^d <= 2^-k, checked exactly
            const Rational miss(radix_ - 1, radix_);
            const Rational target = pow2(-k);
            Rational acc = 1;
            int d = 0;
            while (acc > target) {
                acc *= miss;
                ++d;
            }
            return d;
        }
    }
    return 0;
}

void SioAi::for_each_accepted(const std::string& x, int max_len,
                              const std::function<void(const std::string&)>& fn) const {
    check_domain(x);
    const long cost = enumeration_cost(acceptance_, radix_, max_len);
    if (cost > kEnumerationGuard)
        raise(ErrorKind::DepthTooLarge,
              "acceptance enumeration to depth " + std::to_string(max_len) + " needs " +
                  std::to_string(cost) + " nodes");
    switch (acceptance_.kind) {
        case AcceptanceRule::Kind::FixedLength: {
            if (max_len < acceptance_.length) return;
            std::string u(static_cast<std::size_t>(acceptance_.length), '0');
            while (true) {
                fn(u);
                int pos = acceptance_.length - 1;
                while (pos >= 0 && u[static_cast<std::size_t>(pos)] == '0' + radix_ - 1) {
                    u[static_cast<std::size_t>(pos)] = '0';
                    --pos;
                }
                if (pos < 0) break;
                ++u[static_cast<std::size_t>(pos)];
            }
            return;
        }
        case AcceptanceRule::Kind::StopSymbol: {
            const char stop = static_cast<char>('0' + acceptance_.symbol);
            // lexicographic walk over stop-free prefixes
            std::function<void(std::string&, int)> walk = [&](std::string& prefix, int budget) {
                if (budget == 0) return;
                for (int d = 0; d < radix_; ++d) {
                    const char c = static_cast<char>('0' + d);
                    prefix.push_back(c);
                    if (c == stop) {
                        fn(prefix);
                    } else {
                        walk(prefix, budget - 1);
                    }
                    prefix.pop_back();
                }
            };
            std::string prefix;
            walk(prefix, max_len);
            return;
        }
        case AcceptanceRule::Kind::ExplicitSet: {
            for (const auto& u : acceptance_.members)
                if (static_cast<int>(u.size()) <= max_len) fn(u);
            return;
        }
    }
}

std::string SioAi::sample(const std::string& x, DigitSource& rng) const {
    check_domain(x);
    const long budget = 4L * stop_depth(x, 20);
    std::string u;
    for (long draws = 0;; ++draws) {
        if (accepts(u, x)) {
            auto y = main_output(u, x);
            if (!y)
                raise(ErrorKind::ConstructionSoundness,
                      "main function diverges on accepted string \"" + u + "\"");
            return *y;
        }
        if (draws >= budget)
            raise(ErrorKind::StoppingViolation,
                  "no accepted string after " + std::to_string(budget) + " draws");
        u.push_back(static_cast<char>('0' + rng.next_digit(radix_)));
    }
}

Rational SioAi::kraft_deficit(const std::string& x, int depth) const {
    Rational sum = 0;
    for_each_accepted(x, depth, [&](const std::string& u) {
        sum += Rational(1, boost::multiprecision::pow(BigInt(radix_), u.size()));
    });
    return 1 - sum;
}

DyadicApprox SioAi::pmf_approx(const std::string& x, const std::string& y, int k) const {
    const int depth = stop_depth(x, k);
    Rational sum = 0;
    for_each_accepted(x, depth, [&](const std::string& u) {
        auto out = main_output(u, x);
        if (out && *out == y)
            sum += Rational(1, boost::multiprecision::pow(BigInt(radix_), u.size()));
    });
    return DyadicApprox{sum, pow2(-k)};
}

std::vector<std::string> SioAi::outputs_within(const std::string& x, int k) const {
    std::set<std::string> outs;
    for_each_accepted(x, stop_depth(x, k), [&](const std::string& u) {
        auto y = main_output(u, x);
        if (y) outs.insert(*y);
    });
    return {outs.begin(), outs.end()};
}

void SioAi::validate_prefix_free(const std::string& x, int depth) const {
    std::set<std::string> accepted;
    for_each_accepted(x, depth, [&](const std::string& u) { accepted.insert(u); });
    for (const auto& u : accepted) {
        for (std::size_t l = 0; l < u.size(); ++l) {
            if (accepted.count(u.substr(0, l)))
                raise(ErrorKind::Parameter, "accepted set is not prefix-free at \"" + u + "\"");
        }
    }
}

namespace {

class SioAiPmf : public CondPmf {
public:
    explicit SioAiPmf(SioAi ai) : ai_(std::move(ai)) {}
    DyadicApprox approx(const std::string& x, const std::string& y, int k) const override {
        return ai_.pmf_approx(x, y, k);
    }
    std::optional<std::vector<std::string>> support_hint(const std::string& x) const override {
        return ai_.outputs_within(x, 20);
    }

private:
    SioAi ai_;
};

AcceptanceRule acceptance_from_json(const nlohmann::json& j) {
    AcceptanceRule rule;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "fixed-length") {
        rule.kind = AcceptanceRule::Kind::FixedLength;
        rule.length = j.at("length").get<int>();
    } else if (kind == "stop-symbol") {
        rule.kind = AcceptanceRule::Kind::StopSymbol;
        rule.symbol = j.at("symbol").get<int>();
    } else if (kind == "explicit-set") {
        rule.kind = AcceptanceRule::Kind::ExplicitSet;
        rule.members = j.at("members").get<std::vector<std::string>>();
    } else {
        raise(ErrorKind::Io, "unknown acceptance kind: " + kind);
    }
    return rule;
}

MainFn main_from_json(const nlohmann::json& j) {
    MainFn fn;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "digits") {
        fn.kind = MainFn::Kind::Digits;
    } else if (kind == "length-decimal") {
        fn.kind = MainFn::Kind::LengthDecimal;
    } else if (kind == "const") {
        fn.kind = MainFn::Kind::Const;
        if (j.contains("value")) {
            fn.const_values[""] = j.at("value").get<std::string>();
        } else {
            fn.const_values = j.at("values").get<std::map<std::string, std::string>>();
        }
    } else if (kind == "table") {
        fn.kind = MainFn::Kind::Table;
        fn.table =
            j.at("map").get<std::map<std::string, std::map<std::string, std::string>>>();
    } else {
        raise(ErrorKind::Io, "unknown main kind: " + kind);
    }
    return fn;
}

StopBound stop_from_json(const nlohmann::json& j) {
    StopBound stop;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "formula") {
        stop.kind = StopBound::Kind::Formula;
    } else if (kind == "table") {
        stop.kind = StopBound::Kind::Table;
        stop.depths = j.at("depths").get<std::map<std::string, std::vector<int>>>();
    } else {
        raise(ErrorKind::Io, "unknown stop_bound kind: " + kind);
    }
    return stop;
}

}  // namespace

CondPmfPtr SioAi::pmf() const { return std::make_shared<SioAiPmf>(*this); }

SioAi SioAi::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        return SioAi(j.at("radix").get<int>(), j.at("domain").get<std::vector<std::string>>(),
                     acceptance_from_json(j.at("acceptance")), main_from_json(j.at("main")),
                     stop_from_json(j.at("stop_bound")));
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        raise(ErrorKind::Io, std::string("bad machine spec: ") + e.what());
    }
}

SioAi SioAi::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Io, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

}  // namespace quadriga
