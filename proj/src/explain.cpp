#include "quadriga/explain.hpp"

#include <algorithm>
#include <set>

#include "quadriga/error.hpp"

namespace quadriga {

const CharSet& CharSet::printable_ascii() {
    static const CharSet cs = [] {
        CharSet out;
        out.name = "printable-ascii-7bit";
        for (int c = 0x20; c <= 0x7e; ++c) {
            std::string code(7, '0');
            for (int b = 0; b < 7; ++b)
                if (c & (1 << (6 - b))) code[static_cast<std::size_t>(b)] = '1';
            out.codes[static_cast<char>(c)] = code;
        }
        out.l_max = 7;
        return out;
    }();
    return cs;
}

void CharSet::validate() const {
    if (codes.empty()) raise(ErrorKind::Parameter, "character set is empty");
    int true_max = 0;
    std::set<std::string> seen;
    for (const auto& [c, code] : codes) {
        if (code.empty()) raise(ErrorKind::Parameter, "empty character code");
        for (char b : code)
            if (b != '0' && b != '1') raise(ErrorKind::Parameter, "character code must be bits");
        if (!seen.insert(code).second) raise(ErrorKind::Parameter, "character codes not injective");
        true_max = std::max(true_max, static_cast<int>(code.size()));
    }
    for (const auto& [c1, a] : codes) {
        for (const auto& [c2, b] : codes) {
            if (c1 != c2 && a.size() < b.size() && b.compare(0, a.size(), a) == 0)
                raise(ErrorKind::Parameter, "character codes not prefix-free");
        }
    }
    if (true_max != l_max) raise(ErrorKind::Parameter, "l_max does not match the code table");
}

std::string encode_explanation(const std::string& text, const CharSet& cs) {
    std::string bits;
    for (char c : text) {
        auto it = cs.codes.find(c);
        if (it == cs.codes.end())
            raise(ErrorKind::InvalidCharacter,
                  "character 0x" + std::to_string(static_cast<unsigned char>(c)) +
                      " outside the explanation character set");
        bits += it->second;
    }
    return bits;
}

std::string decode_explanation(const std::string& bits, const CharSet& cs) {
    std::string text;
    std::size_t pos = 0;
    while (pos < bits.size()) {
        bool matched = false;
        for (const auto& [c, code] : cs.codes) {
            if (bits.size() - pos >= code.size() && bits.compare(pos, code.size(), code) == 0) {
                text.push_back(c);
                pos += code.size();
                matched = true;
                break;
            }
        }
        if (!matched)
            raise(ErrorKind::InvalidCharacter, "bit stream is not a character-code concatenation");
    }
    return text;
}

BigInt explanation_cost(const std::string& text, const CharSet& cs) {
    const BigInt encoded_len = BigInt(cs.l_max) * text.size();
    if (encoded_len == 0) return 0;
    return encoded_len + 2 * ceil_log2(encoded_len + 1);
}

// --------------------------- explanation language ---------------------------

struct ExplanationPmf::Term {
    enum class Kind { Table, Uniform, Geom, Telescope, Mix };
    Kind kind = Kind::Table;
    std::map<std::string, Rational> entries;             // Table / Uniform
    Rational geom_p;                                     // Geom
    std::vector<std::pair<Rational, Term>> components;   // Mix (weights renormalized)
    Rational weight_sum;                                 // Mix

    Rational mass(const std::string& y) const {
        switch (kind) {
            case Kind::Table:
            case Kind::Uniform: {
                auto it = entries.find(y);
                return it == entries.end() ? Rational(0) : it->second;
            }
            case Kind::Geom: {
                auto idx = decimal_order(1)->index_of(y);
                if (!idx) return 0;
                Rational m = geom_p;
                const Rational miss = 1 - geom_p;
                for (std::size_t i = 0; i < *idx; ++i) m *= miss;
                return m;
            }
            case Kind::Telescope: {
                auto idx = shortlex_binary_order()->index_of(y);
                if (!idx) return 0;
                return TelescopePmf::mass_at_index(BigInt(*idx));
            }
            case Kind::Mix: {
                Rational total = 0;
                for (const auto& [w, term] : components) total += w * term.mass(y);
                return total / weight_sum;
            }
        }
        return 0;
    }
};

namespace {

using Term = ExplanationPmf::Term;

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Term parse() {
        Term t = expr();
        if (pos_ != text_.size())
            fail("trailing characters after the expression");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        raise(ErrorKind::Parameter,
              "explanation parse error at offset " + std::to_string(pos_) + ": " + why);
    }
    bool eat(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    std::string word() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z') ++pos_;
        if (start == pos_) fail("expected a keyword");
        return text_.substr(start, pos_ - start);
    }
    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        if (start == pos_) fail("expected digits");
        return text_.substr(start, pos_ - start);
    }
    Rational rational() {
        std::string num = digits();
        if (eat('/')) {
            std::string den = digits();
            if (BigInt(den) == 0) fail("zero denominator");
            return Rational(BigInt(num), BigInt(den));
        }
        return Rational(BigInt(num));
    }

    Term expr() {
        const std::string kw = word();
        Term t;
        if (kw == "table") {
            t.kind = Term::Kind::Table;
            expect('{');
            Rational total = 0;
            do {
                std::string key = digits();
                expect(':');
                Rational mass = rational();
                if (mass < 0) fail("negative mass");
                if (!t.entries.emplace(key, mass).second) fail("duplicate key " + key);
                total += mass;
            } while (eat(','));
            expect('}');
            if (total != 1) fail("table masses sum to " + rational_to_string(total));
        } else if (kw == "uniform") {
            t.kind = Term::Kind::Uniform;
            expect('{');
            std::vector<std::string> keys;
            do {
                keys.push_back(digits());
            } while (eat(','));
            expect('}');
            const Rational each(1, keys.size());
            for (const auto& key : keys)
                if (!t.entries.emplace(key, each).second) fail("duplicate key " + key);
        } else if (kw == "geom") {
            t.kind = Term::Kind::Geom;
            expect('{');
            t.geom_p = rational();
            expect('}');
            if (t.geom_p <= 0 || t.geom_p >= 1) fail("geom parameter must be in (0,1)");
        } else if (kw == "telescope") {
            t.kind = Term::Kind::Telescope;
        } else if (kw == "mix") {
            t.kind = Term::Kind::Mix;
            expect('{');
            do {
                Rational w = rational();
                if (w <= 0) fail("mixture weights must be positive");
                expect(':');
                Term component = expr();
                if (component.kind != Term::Kind::Table && component.kind != Term::Kind::Uniform)
                    fail("mixture components must be finite");
                t.weight_sum += w;
                t.components.emplace_back(std::move(w), std::move(component));
            } while (eat(','));
            expect('}');
        } else {
            fail("unknown keyword \"" + kw + "\"");
        }
        return t;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

OutputOrderPtr order_for(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Table:
        case Term::Kind::Uniform: {
            std::vector<std::string> keys;
            for (const auto& [y, m] : t.entries)
                if (m > 0) keys.push_back(y);
            return lexicographic_order(std::move(keys));
        }
        case Term::Kind::Geom:
            return decimal_order(1);
        case Term::Kind::Telescope:
            return shortlex_binary_order();
        case Term::Kind::Mix: {
            std::vector<std::string> keys;
            for (const auto& [w, c] : t.components)
                for (const auto& [y, m] : c.entries)
                    if (m > 0) keys.push_back(y);
            return lexicographic_order(std::move(keys));
        }
    }
    raise(ErrorKind::Parameter, "unreachable");
}

}  // namespace

ExplanationPmf parse_explanation(const std::string& text) {
    const CharSet& cs = CharSet::printable_ascii();
    for (char c : text)
        if (!cs.contains(c))
            raise(ErrorKind::InvalidCharacter, "explanation contains a non-ASCII character");
    ExplanationPmf pmf;
    pmf.root_ = std::make_shared<Term>(Parser(text).parse());
    pmf.order_ = order_for(*pmf.root_);
    pmf.source_ = text;
    return pmf;
}

DyadicApprox ExplanationPmf::approx(const std::string& x, const std::string& y, int) const {
    return DyadicApprox::exact(root_->mass(y));
}

std::optional<Rational> ExplanationPmf::exact_mass(const std::string&, const std::string& y) const {
    return root_->mass(y);
}

std::optional<std::vector<std::string>> ExplanationPmf::support_hint(const std::string&) const {
    if (!order_->size()) return std::nullopt;
    std::vector<std::string> out;
    for (std::size_t j = 0; j < *order_->size(); ++j) out.push_back(*order_->at(j));
    return out;
}

Rational interpret(const std::string& text, int k, const std::string& point) {
    if (k < 0) raise(ErrorKind::Parameter, "accuracy must be >= 0");
    return *parse_explanation(text).exact_mass("", point);
}

FaithfulnessReport verify_faithful(const std::string& text, const CondPmf& reference,
                                   const std::string& x, const std::vector<std::string>& points,
                                   int k_max) {
    FaithfulnessReport report;
    report.k_max = k_max;
    ExplanationPmf interpreted = parse_explanation(text);
    const int ref_k = k_max + 2;
    for (const auto& z : points) {
        DyadicApprox ref = reference.approx(x, z, ref_k);
        if (ref.err > pow2(-ref_k))
            raise(ErrorKind::Precision,
                  "reference accuracy below the required 2^-" + std::to_string(ref_k));
        const Rational value = *interpreted.exact_mass(x, z);
        const Rational diff = value >= ref.value ? value - ref.value : ref.value - value;
        report.max_violation = std::max(report.max_violation, diff - ref.err);
        for (int k = 0; k <= k_max; ++k) {
            const Rational bound = pow2(-k);
            if (diff - ref.err >= bound) {
                if (!report.violation) report.violation = FaithfulnessViolation{z, k, diff - ref.err};
                break;
            }
            if (!(diff + ref.err < bound))
                raise(ErrorKind::Precision,
                      "cannot certify faithfulness at point \"" + z + "\", k=" + std::to_string(k));
        }
        ++report.points_checked;
    }
    report.faithful = !report.violation.has_value();
    if (report.max_violation < 0) report.max_violation = 0;
    return report;
}

}  // namespace quadriga
