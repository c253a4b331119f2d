#include "quadriga/audit.hpp"

#include <algorithm>
#include <set>

#include "quadriga/alphabet.hpp"
#include "quadriga/error.hpp"

namespace quadriga::audit {

namespace {

// Certified rational bounds on 1/ln 2 = log2(e).
const Rational kLog2E_lo(14426950408ll, 10000000000ll);
const Rational kLog2E_hi(14426950409ll, 10000000000ll);

constexpr std::uint64_t kPlainRunBudget = 1u << 20;

}  // namespace

std::string encode_output(const std::string& y, OutputEncoding enc) {
    switch (enc) {
        case OutputEncoding::IdentityBits:
            for (char c : y)
                if (c != '0' && c != '1')
                    raise(ErrorKind::InvalidSymbol, "output \"" + y + "\" is not a bit string");
            return y;
        case OutputEncoding::DecimalValueBits: {
            auto idx = decimal_order(0)->index_of(y);
            if (!idx) raise(ErrorKind::InvalidSymbol, "output \"" + y + "\" is not a decimal string");
            return nat_digits(BigInt(*idx));
        }
    }
    raise(ErrorKind::Parameter, "unreachable");
}

std::string encode_condition(const std::string& x) {
    return encode_explanation(x, CharSet::printable_ascii());
}

WitnessChain build_witness(const std::string& explanation, const SfeCode& code) {
    WitnessChain chain;
    const std::string enc = encode_explanation(explanation, CharSet::printable_ascii());
    const std::string wrapped = sd_encode(enc).code;
    chain.decoder_len = static_cast<int>(std::string(micro::kDecoderRoutineId).size());
    chain.pmf_program_len =
        static_cast<int>(std::string(micro::kPmfProgramId).size() + wrapped.size());
    chain.code_len = code.kstar;
    chain.bits = std::string(micro::kDecoderRoutineId) + micro::kPmfProgramId + wrapped + code.code;
    return chain;
}

std::string run_witness(const std::string& bits, const std::string& condition, OutputEncoding enc) {
    const std::string dec_id = micro::kDecoderRoutineId;
    const std::string pmf_id = micro::kPmfProgramId;
    if (bits.compare(0, dec_id.size(), dec_id) == 0) {
        std::string rest = bits.substr(dec_id.size());
        if (rest.compare(0, pmf_id.size(), pmf_id) != 0)
            raise(ErrorKind::InvalidCode, "decoder routine expects a pmf program");
        auto [explanation_bits, stream] = sd_decode(rest.substr(pmf_id.size()));
        const std::string text = decode_explanation(explanation_bits, CharSet::printable_ascii());
        auto pmf = std::make_shared<ExplanationPmf>(parse_explanation(text));
        SfeCodec codec(pmf, "", pmf->canonical_order());
        auto [y, remainder] = codec.decode(stream);
        if (!remainder.empty())
            raise(ErrorKind::InvalidCode, "trailing bits after the code word");
        return encode_output(y, enc);
    }
    if (bits.compare(0, pmf_id.size(), pmf_id) == 0)
        raise(ErrorKind::InvalidCode, "a pmf program alone does not produce a string");
    auto [core, rest] = sd_decode(bits);
    if (!rest.empty()) raise(ErrorKind::InvalidCode, "trailing bits after the wrapped program");
    micro::RunResult r = micro::run({core, micro::Mode::Plain}, condition, kPlainRunBudget);
    if (!r.halted()) raise(ErrorKind::InvalidCode, "wrapped program did not halt");
    return r.output;
}

namespace {

std::vector<std::string> faithfulness_points(const CondPmf& ai_pmf, const ExplanationPmf& epmf,
                                             const std::string& x, const std::string& y) {
    std::set<std::string> points;
    points.insert(y);
    if (auto hint = ai_pmf.support_hint(x)) {
        for (const auto& z : *hint) points.insert(z);
    }
    const auto order = epmf.canonical_order();
    const std::size_t span = order->size() ? std::min<std::size_t>(*order->size(), 8) : 8;
    for (std::size_t j = 0; j < span; ++j) {
        if (auto z = order->at(j)) points.insert(*z);
    }
    return {points.begin(), points.end()};
}

}  // namespace

AuditRecord audit_point(const CondPmf& ai_pmf, const std::string& explanation,
                        const std::string& x, const std::string& y, const AuditConfig& cfg) {
    AuditRecord record;
    record.x = x;
    record.y = y;

    ExplanationPmf epmf = parse_explanation(explanation);
    auto points = faithfulness_points(ai_pmf, epmf, x, y);
    FaithfulnessReport faith = verify_faithful(explanation, ai_pmf, x, points, cfg.faithfulness_k);
    if (!faith.faithful)
        raise(ErrorKind::Parameter, "explanation is not faithful to the pmf at point \"" +
                                        faith.violation->point + "\"");

    record.explanation_cost_term = explanation_cost(explanation, CharSet::printable_ascii());

    bool infinite = false;
    record.log_perplexity_bits = certified_neg_log2_mass(ai_pmf, x, y, cfg.log_prec, infinite);
    record.infinite_perplexity = infinite;
    if (infinite) return record;  // LHS is +infinity; the audit passes vacuously

    const std::string target = encode_output(y, cfg.output_encoding);
    const std::string condition = encode_condition(x);
    record.complexity_proxy =
        micro::complexity_upper(target, condition, micro::Mode::Plain, cfg.caps);

    auto pmf = std::make_shared<ExplanationPmf>(epmf);
    SfeCodec codec(pmf, x, epmf.canonical_order());
    SfeCode code = codec.encode(y);
    record.witness = build_witness(explanation, code);
    record.witness_program_len = record.witness.total();
    const std::string produced = run_witness(record.witness.bits, condition, cfg.output_encoding);
    if (produced != target)
        raise(ErrorKind::ConstructionSoundness,
              "witness produced \"" + produced + "\" instead of \"" + target + "\"");

    if (record.complexity_proxy.upper_bound) {
        const Rational lhs_lo =
            record.log_perplexity_bits.lo + Rational(record.explanation_cost_term);
        record.slack = lhs_lo - *record.complexity_proxy.upper_bound;
    }
    return record;
}

AuditReport audit_expect(const FiniteEnvironment& env, const CondPmf& ai_pmf,
                         const std::map<std::string, std::string>& explanations,
                         const AuditConfig& cfg) {
    env.validate();
    AuditReport report;
    for (const auto& [x, y, w] : env.joint()) {
        auto it = explanations.find(x);
        if (it == explanations.end())
            raise(ErrorKind::Parameter, "no explanation for input \"" + x + "\"");
        report.records.push_back(audit_point(ai_pmf, it->second, x, y, cfg));
        report.weights.push_back(w);
    }
    // Deterministic aggregation order.
    std::vector<std::size_t> idx(report.records.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = report.records[a];
        const auto& rb = report.records[b];
        return std::tie(ra.x, ra.y) < std::tie(rb.x, rb.y);
    });
    std::vector<AuditRecord> records;
    std::vector<Rational> weights;
    for (std::size_t i : idx) {
        records.push_back(std::move(report.records[i]));
        weights.push_back(report.weights[i]);
    }
    report.records = std::move(records);
    report.weights = std::move(weights);

    Interval lhs{0, 0};
    Rational proxy_sum = 0;
    bool proxy_complete = true;
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        const auto& r = report.records[i];
        const Rational& w = report.weights[i];
        if (r.infinite_perplexity) {
            report.infinite = true;
            continue;
        }
        lhs += w * (r.log_perplexity_bits + Interval{Rational(r.explanation_cost_term),
                                                     Rational(r.explanation_cost_term)});
        if (r.complexity_proxy.upper_bound) {
            proxy_sum += w * *r.complexity_proxy.upper_bound;
        } else {
            proxy_complete = false;
        }
        if (r.slack) report.min_slack = report.min_slack ? std::min(*report.min_slack, *r.slack)
                                                         : *r.slack;
    }
    report.expect_lhs = lhs;
    if (proxy_complete) report.expect_proxy = proxy_sum;

    report.entropy_bits = conditional_entropy_bits(env, cfg.log_prec);
    LogExpectation perp = expected_log_perplexity(env, ai_pmf, cfg.log_prec - 3);
    if (!perp.infinite) report.gibbs_gap = perp.bits - report.entropy_bits;
    return report;
}

// ------------------------- gap instances / FindDiff -------------------------

namespace {

class GapPmf : public CondPmf {
public:
    GapPmf(std::string eta, std::string eta_prime, Rational delta)
        : eta_(std::move(eta)), eta_prime_(std::move(eta_prime)), delta_(std::move(delta)) {}

    DyadicApprox approx(const std::string& x, const std::string& y, int) const override {
        return DyadicApprox::exact(*exact_mass(x, y));
    }
    std::optional<Rational> exact_mass(const std::string& x, const std::string& y) const override {
        Rational base = *TelescopePmf().exact_mass(x, y);
        if (y == eta_) return base + delta_;
        if (y == eta_prime_) return base - delta_;
        return base;
    }

private:
    std::string eta_, eta_prime_;
    Rational delta_;
};

}  // namespace

GapInstance build_gap_instance(std::size_t eta_index, const Rational& delta) {
    GapInstance g;
    g.order = shortlex_binary_order();
    if (eta_index == 0)
        raise(ErrorKind::Parameter, "eta must differ from eta' = output 0");
    g.eta_index = eta_index;
    g.eta = *g.order->at(eta_index);
    g.eta_prime = *g.order->at(0);
    g.q_eta = TelescopePmf::mass_at_index(BigInt(eta_index));
    g.q_eta_prime = TelescopePmf::mass_at_index(BigInt(0));
    if (!(delta > 0 && delta < g.q_eta_prime))
        raise(ErrorKind::Parameter,
              "delta must lie in (0, " + rational_to_string(g.q_eta_prime) + ")");
    g.delta = delta;
    g.base = std::make_shared<TelescopePmf>();
    g.perturbed = std::make_shared<GapPmf>(g.eta, g.eta_prime, delta);
    return g;
}

Interval GapInstance::kl_proof_bound() const {
    const Rational factor = delta * delta * (1 / q_eta + 1 / q_eta_prime);
    return {factor * kLog2E_lo, factor * kLog2E_hi};
}

Interval GapInstance::kl_exact(int frac_bits) const {
    // Only two outputs contribute: p log2(p/q) at eta (positive) and at
    // eta' (negative).
    const Rational p_eta = q_eta + delta;
    const Rational p_eta_prime = q_eta_prime - delta;
    Interval total = p_eta * log2_bounds(p_eta / q_eta, frac_bits);
    if (p_eta_prime > 0) {
        Interval neg = log2_bounds(p_eta_prime / q_eta_prime, frac_bits);
        total += Interval{p_eta_prime * neg.lo, p_eta_prime * neg.hi};
    }
    return total;
}

FindDiffResult find_diff(const CondPmf& p, const CondPmf& q, const std::string& x0,
                         const Rational& delta, const OutputOrder& order,
                         std::size_t index_budget) {
    if (delta <= 0) raise(ErrorKind::Parameter, "delta must be positive");
    // smallest k with 2^-k <= delta/2
    long k = ceil_log2(Rational(2) / delta);
    if (k < 0) k = 0;
    for (std::size_t j = 0; j < index_budget; ++j) {
        auto yj = order.at(j);
        if (!yj) break;
        auto q_exact = q.exact_mass(x0, *yj);
        if (!q_exact)
            raise(ErrorKind::ExactValueRequired, "base pmf must provide exact values");
        DyadicApprox pj = p.approx(x0, *yj, static_cast<int>(k));
        if (compare_with_margin(pj, *q_exact) == Certainty::CertainlyAbove)
            return {*yj, j, j + 1};
    }
    raise(ErrorKind::NotFound,
          "no certified difference within " + std::to_string(index_budget) + " indices");
}

}  // namespace quadriga::audit
