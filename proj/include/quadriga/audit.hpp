#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadriga/environment.hpp"
#include "quadriga/explain.hpp"
#include "quadriga/micro.hpp"
#include "quadriga/sfe.hpp"

namespace quadriga::audit {

// Encodings between audited objects and machine bit strings. Conditions are
// 7-bit ASCII; outputs are either bit strings already or decimal values
// rendered in binary.
enum class OutputEncoding { IdentityBits, DecimalValueBits };

std::string encode_output(const std::string& y, OutputEncoding enc);
std::string encode_condition(const std::string& x);

// The constructive witness for one (x, y): the fixed decoder routine, a pmf
// program derived from the explanation, and the code word for y.
//
//   bits = "1000" . ("1001" . sd(EncLambda(e))) . c_{y|x}
struct WitnessChain {
    std::string bits;
    int decoder_len = 0;      // routine id
    int pmf_program_len = 0;  // adapter id + wrapped explanation
    int code_len = 0;         // k*
    int total() const { return decoder_len + pmf_program_len + code_len; }
};

// Fixed-routine budget in the witness-length bound:
//   total <= -log2 Q(y|x) + L|e| + 2*ceil(log2(L|e|+1)) + kWitnessOverhead
// (4 decoder id + 4 adapter id + 4 code-length slack + 2 wrap slack).
inline constexpr int kWitnessOverhead = 14;

WitnessChain build_witness(const std::string& explanation, const SfeCode& code);

// Executes a prefix-universal program: the decoder-routine form above, or a
// self-delimited plain machine program run on the condition register.
std::string run_witness(const std::string& bits, const std::string& condition, OutputEncoding enc);

struct AuditConfig {
    micro::SearchCaps caps{12, 4096};
    OutputEncoding output_encoding = OutputEncoding::IdentityBits;
    int faithfulness_k = 16;
    int log_prec = 40;
};

struct AuditRecord {
    std::string x, y;
    bool infinite_perplexity = false;
    Interval log_perplexity_bits{0, 0};  // certified -log2 Q(y|x)
    BigInt explanation_cost_term = 0;
    micro::ComplexityEstimate complexity_proxy;
    std::optional<int> witness_program_len;
    WitnessChain witness;
    std::optional<Rational> slack;  // certified LHS lower bound minus proxy
};

// Evaluates the inequality terms at one (x, y): checks the explanation is
// faithful at sampled points, builds and runs the constructive witness, and
// records the bounded-search complexity proxy.
AuditRecord audit_point(const CondPmf& ai_pmf, const std::string& explanation,
                        const std::string& x, const std::string& y, const AuditConfig& cfg = {});

struct AuditReport {
    std::vector<AuditRecord> records;
    std::vector<Rational> weights;  // aligned with records
    bool infinite = false;
    Interval expect_lhs{0, 0};
    std::optional<Rational> expect_proxy;
    std::optional<Rational> min_slack;
    Interval entropy_bits{0, 0};
    Interval gibbs_gap{0, 0};  // E[-log Q] - H, certified
};

AuditReport audit_expect(const FiniteEnvironment& env, const CondPmf& ai_pmf,
                         const std::map<std::string, std::string>& explanations,
                         const AuditConfig& cfg = {});

// ---------------------------------------------------------------------------
// Naive-bound failure machinery: a base law q, a two-point perturbation p,
// and the difference finder.
// ---------------------------------------------------------------------------

struct GapInstance {
    std::size_t eta_index = 0;
    std::string eta;        // output gaining +delta
    std::string eta_prime;  // output 0, losing delta
    Rational delta;
    Rational q_eta, q_eta_prime;
    CondPmfPtr base;       // telescoping law
    CondPmfPtr perturbed;  // p
    OutputOrderPtr order;  // shortlex

    // delta^2 (1/q(eta) + 1/q(eta')) / ln 2 as a certified interval.
    Interval kl_proof_bound() const;
    // Certified bounds on the exact KL(p||q) in bits (two nonzero terms).
    Interval kl_exact(int frac_bits) const;
};

GapInstance build_gap_instance(std::size_t eta_index, const Rational& delta);

struct FindDiffResult {
    std::string y;
    std::size_t index = 0;
    std::size_t steps = 0;  // indices scanned
};

// Scans the order for the first output where a +-delta/2 approximation of p
// certainly exceeds the exact q value.
FindDiffResult find_diff(const CondPmf& p, const CondPmf& q, const std::string& x0,
                         const Rational& delta, const OutputOrder& order,
                         std::size_t index_budget = 1'000'000);

}  // namespace quadriga::audit
