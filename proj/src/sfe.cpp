#include "quadriga/sfe.hpp"

#include <algorithm>

#include "quadriga/error.hpp"

namespace quadriga {

namespace {

// Tail cutoff: outcomes past cumulative mass 1 - 2^-32 are not encodable.
const int kTailCutoffExp = 32;

std::string dyadic_digits(const BigInt& numerator, int k) {
    // k binary digits of numerator / 2^k, most significant first.
    std::string out(static_cast<std::size_t>(k), '0');
    for (int i = 0; i < k; ++i) {
        if (boost::multiprecision::bit_test(numerator, static_cast<unsigned>(k - 1 - i)))
            out[static_cast<std::size_t>(i)] = '1';
    }
    return out;
}

}  // namespace

SfeCodec::SfeCodec(CondPmfPtr pmf, std::string x, OutputOrderPtr order, SfeOptions options)
    : pmf_(std::move(pmf)), x_(std::move(x)), order_(std::move(order)), options_(options) {
    if (!pmf_ || !order_) raise(ErrorKind::Parameter, "codec needs a pmf and an order");
}

int SfeCodec::find_kstar(std::size_t index) const {
    const std::string y = *order_->at(index);
    bool positive_certified = false;
    for (int k = 0; k <= options_.max_k; ++k) {
        DyadicApprox a = pmf_->approx(x_, y, k);
        // accept k once the approximation reaches 2^-(k-3) - 2^-k = 7*2^-k
        if (a.value >= 7 * pow2(-k)) return k;
        if (compare_with_margin(a, 0) == Certainty::CertainlyAbove) positive_certified = true;
    }
    if (positive_certified)
        raise(ErrorKind::PrecisionCap,
              "k* search exceeded cap " + std::to_string(options_.max_k) + " for output \"" + y +
                  "\"");
    // Distinguish a certified tail outcome from a plain zero mass in the
    // error message; both are unencodable.
    DyadicApprox cum = cumulative(index, kTailCutoffExp + 2);
    if (cum.value - cum.err >= 1 - pow2(-kTailCutoffExp))
        raise(ErrorKind::ZeroMass, "output \"" + y + "\" lies beyond the tail-mass cutoff");
    raise(ErrorKind::ZeroMass, "mass of output \"" + y + "\" cannot be certified positive");
}

DyadicApprox SfeCodec::cumulative(std::size_t i, int k) const {
    // Sum the first i masses at accuracy k + ceil(log2(i+1)) each, so the
    // accumulated error stays under 2^-k.
    if (i == 0) return DyadicApprox::exact(0);
    const int shift = ceil_log2(BigInt(i + 1));
    const int per_term = k + shift;
    DyadicApprox sum = DyadicApprox::exact(0);
    for (std::size_t j = 0; j < i; ++j) {
        auto yj = order_->at(j);
        if (!yj) raise(ErrorKind::Parameter, "order exhausted before index " + std::to_string(i));
        sum = approx_add(sum, pmf_->approx(x_, *yj, per_term));
    }
    return sum;
}

SfeCode SfeCodec::encode_index(std::size_t index) const {
    if (!order_->at(index)) raise(ErrorKind::Parameter, "no output at index " + std::to_string(index));
    const int kstar = find_kstar(index);
    DyadicApprox cum = cumulative(index, kstar);
    // Smallest k*-digit dyadic >= F~ + 2*2^-k*.
    const Rational target = cum.value + 2 * pow2(-kstar);
    const Rational scaled = target * pow2(kstar);
    BigInt t = numerator(scaled) / denominator(scaled);
    if (Rational(t) < scaled) t += 1;
    if (t >= (BigInt(1) << static_cast<unsigned>(kstar)))
        raise(ErrorKind::PrecisionCap, "rounded cumulative escaped [0,1) at index " +
                                           std::to_string(index));
    SfeCode code;
    code.kstar = kstar;
    code.cdf_lower = Rational(t, BigInt(1) << static_cast<unsigned>(kstar));
    code.code = dyadic_digits(t, kstar);
    code.y_index = index;
    return code;
}

SfeCode SfeCodec::encode(const std::string& y) const {
    auto index = order_->index_of(y);
    if (!index) raise(ErrorKind::Parameter, "output \"" + y + "\" not in the enumeration order");
    return encode_index(*index);
}

std::pair<std::string, std::string> SfeCodec::decode(const std::string& stream) const {
    for (std::size_t i = 0; i < options_.decode_budget; ++i) {
        auto yi = order_->at(i);
        if (!yi) break;  // finite order exhausted
        SfeCode candidate = encode_index(i);
        if (stream.size() >= candidate.code.size() &&
            stream.compare(0, candidate.code.size(), candidate.code) == 0) {
            return {*yi, stream.substr(candidate.code.size())};
        }
    }
    raise(ErrorKind::InvalidCode, "stream does not begin with a code of any scanned outcome");
}

SfeVerifyReport SfeCodec::verify(const std::vector<std::string>& support) const {
    SfeVerifyReport report;
    std::vector<SfeCode> codes;
    codes.reserve(support.size());
    for (const auto& y : support) {
        SfeCode c = encode(y);
        auto q = pmf_->exact_mass(x_, y);
        Rational neg_log_lo;
        if (q) {
            neg_log_lo = neg_log2_bounds(*q, 40).lo;
        } else {
            DyadicApprox a = pmf_->approx(x_, y, c.kstar + 8);
            Rational hi_mass = a.value + a.err;
            if (hi_mass > 1) hi_mass = 1;
            neg_log_lo = neg_log2_bounds(hi_mass, 40).lo;
        }
        report.outcomes.push_back({y, c.kstar, neg_log_lo + 4 - c.kstar});
        report.lengths.push_back(c.kstar);
        codes.push_back(std::move(c));
    }
    report.prefix_free = true;
    for (std::size_t a = 0; a < codes.size(); ++a) {
        for (std::size_t b = 0; b < codes.size(); ++b) {
            if (a == b) continue;
            const auto& ca = codes[a].code;
            const auto& cb = codes[b].code;
            if (ca.size() <= cb.size() && cb.compare(0, ca.size(), ca) == 0)
                report.prefix_free = false;
        }
    }
    if (!report.outcomes.empty()) {
        auto slack_of = [](const SfeOutcomeReport& o) { return o.slack_lo; };
        report.min_slack = slack_of(report.outcomes.front());
        report.max_slack = report.min_slack;
        for (const auto& o : report.outcomes) {
            report.min_slack = std::min(report.min_slack, o.slack_lo);
            report.max_slack = std::max(report.max_slack, o.slack_lo);
        }
    }
    return report;
}

}  // namespace quadriga
