#include "quadriga/micro.hpp"

#include <vector>

#include "quadriga/alphabet.hpp"
#include "quadriga/error.hpp"

namespace quadriga::micro {

namespace {

enum Op : int {
    kHalt = 0,
    kEmit0 = 1,
    kEmit1 = 2,
    kRead = 3,
    kJie = 4,
    kDup = 5,
    kMark = 6,
    kJback = 7,
};

// Unwrap a prefix-mode program; nullopt when the bits are not exactly one
// self-delimited plain program.
std::optional<std::string> unwrap_prefix(const std::string& bits) {
    try {
        auto [core, rest] = sd_decode(bits);
        if (!rest.empty()) return std::nullopt;
        return core;
    } catch (const Error&) {
        return std::nullopt;
    }
}

RunResult run_opcodes(std::string_view bits, const std::string& condition,
                      std::uint64_t step_budget) {
    RunResult result;
    if (bits.size() % 3 != 0) return result;  // Invalid
    const std::size_t n_instr = bits.size() / 3;
    std::size_t pc = 0, head = 0, anchor = 0;
    std::string out;
    std::uint64_t steps = 0;
    while (true) {
        if (pc >= n_instr) {
            result.status = RunResult::Status::Halted;
            result.output = std::move(out);
            result.steps = steps;
            return result;
        }
        const std::size_t b = pc * 3;
        const int op = ((bits[b] - '0') << 2) | ((bits[b + 1] - '0') << 1) | (bits[b + 2] - '0');
        const std::uint64_t cost = (op == kDup) ? std::max<std::uint64_t>(1, out.size()) : 1;
        steps += cost;
        if (steps > step_budget) {
            result.status = RunResult::Status::OutOfBudget;
            result.steps = steps;
            return result;
        }
        switch (op) {
            case kHalt:
                result.status = RunResult::Status::Halted;
                result.output = std::move(out);
                result.steps = steps;
                return result;
            case kEmit0:
                out.push_back('0');
                ++pc;
                break;
            case kEmit1:
                out.push_back('1');
                ++pc;
                break;
            case kRead:
                if (head < condition.size()) out.push_back(condition[head++]);
                ++pc;
                break;
            case kJie:
                pc += (head >= condition.size()) ? 2 : 1;
                break;
            case kDup:
                out += out;
                ++pc;
                break;
            case kMark:
                anchor = pc + 1;
                ++pc;
                break;
            case kJback:
                pc = anchor;
                break;
        }
    }
}

}  // namespace

RunResult run(const MicroProgram& program, const std::string& condition,
              std::uint64_t step_budget) {
    for (char c : program.bits)
        if (c != '0' && c != '1') return RunResult{};
    for (char c : condition)
        if (c != '0' && c != '1')
            raise(ErrorKind::InvalidSymbol, "condition must be a bit string");
    if (program.mode == Mode::Prefix) {
        auto core = unwrap_prefix(program.bits);
        if (!core) return RunResult{};  // Invalid
        return run_opcodes(*core, condition, step_budget);
    }
    return run_opcodes(program.bits, condition, step_budget);
}

void for_each_program(int len, Mode mode, const std::function<bool(const std::string&)>& fn) {
    if (len < 0) return;
    if (mode == Mode::Plain) {
        if (len % 3 != 0) return;
        const int n_instr = len / 3;
        std::vector<int> ops(static_cast<std::size_t>(n_instr), 0);
        std::string bits(static_cast<std::size_t>(len), '0');
        auto render = [&](std::size_t i) {
            const int op = ops[i];
            bits[i * 3] = static_cast<char>('0' + ((op >> 2) & 1));
            bits[i * 3 + 1] = static_cast<char>('0' + ((op >> 1) & 1));
            bits[i * 3 + 2] = static_cast<char>('0' + (op & 1));
        };
        while (true) {
            if (!fn(bits)) return;
            int pos = n_instr - 1;
            while (pos >= 0 && ops[static_cast<std::size_t>(pos)] == 7) {
                ops[static_cast<std::size_t>(pos)] = 0;
                render(static_cast<std::size_t>(pos));
                --pos;
            }
            if (pos < 0) return;
            ++ops[static_cast<std::size_t>(pos)];
            render(static_cast<std::size_t>(pos));
        }
    }
    // Prefix mode: a wrapped program of this total length has core length m
    // with m + 2*max(1, digit_len(m)) == len and m a multiple of 3.
    for (int m = 0; m <= len; m += 3) {
        const int d = digit_len(BigInt(m));
        if (m + 2 * d != len) continue;
        const std::string wrap_prefix = [&] {
            std::string p(static_cast<std::size_t>(d - 1), '1');
            p.push_back('0');
            p += nat_digits(BigInt(m));
            return p;
        }();
        bool keep_going = true;
        for_each_program(m, Mode::Plain, [&](const std::string& core) {
            keep_going = fn(wrap_prefix + core);
            return keep_going;
        });
        if (!keep_going) return;
    }
}

ComplexityEstimate complexity_upper(const std::string& target, const std::string& condition,
                                    Mode mode, SearchCaps caps) {
    if (caps.len_cap > 26 || caps.len_cap < 0)
        raise(ErrorKind::SearchTooLarge,
              "search length cap must be in [0, 26], got " + std::to_string(caps.len_cap));
    ComplexityEstimate estimate;
    estimate.target = target;
    estimate.condition = condition;
    estimate.mode = mode;
    estimate.search_len_cap = caps.len_cap;
    estimate.step_budget = caps.step_budget;
    for (int len = 0; len <= caps.len_cap && !estimate.witness; ++len) {
        for_each_program(len, mode, [&](const std::string& bits) {
            MicroProgram candidate{bits, mode};
            RunResult r = run(candidate, condition, caps.step_budget);
            if (r.halted() && r.output == target) {
                estimate.upper_bound = len;
                estimate.witness = std::move(candidate);
                return false;
            }
            return true;
        });
    }
    return estimate;
}

std::string high_complexity_witness(int m, int threshold, Mode mode, std::uint64_t step_budget) {
    if (m < 1 || m > 20)
        raise(ErrorKind::Parameter, "witness length must be in [1, 20], got " + std::to_string(m));
    if (threshold < 0 || threshold > 26)
        raise(ErrorKind::Parameter, "threshold must be in [0, 26]");
    // 2^m > 2^threshold - 1, the counting precondition.
    if (m < threshold)
        raise(ErrorKind::Parameter,
              "counting precondition fails: 2^" + std::to_string(m) + " <= 2^" +
                  std::to_string(threshold) + " - 1");
    std::vector<bool> covered(std::size_t{1} << m, false);
    for (int len = 0; len < threshold; ++len) {
        for_each_program(len, mode, [&](const std::string& bits) {
            RunResult r = run(MicroProgram{bits, mode}, "", step_budget);
            if (r.halted() && r.output.size() == static_cast<std::size_t>(m)) {
                std::size_t v = 0;
                for (char c : r.output) v = (v << 1) | static_cast<std::size_t>(c - '0');
                covered[v] = true;
            }
            return true;
        });
    }
    for (std::size_t v = 0; v < covered.size(); ++v) {
        if (covered[v]) continue;
        std::string bits(static_cast<std::size_t>(m), '0');
        for (int i = 0; i < m; ++i)
            if (v & (std::size_t{1} << (m - 1 - i))) bits[static_cast<std::size_t>(i)] = '1';
        return bits;
    }
    raise(ErrorKind::NotFound, "elimination left no witness, which contradicts counting");
}

}  // namespace quadriga::micro
