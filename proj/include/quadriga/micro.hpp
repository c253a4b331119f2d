#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "quadriga/rational.hpp"

namespace quadriga::micro {

// Fixed 8-instruction register machine over bits (machine table v1, see
// docs/micro_machine.md). Opcodes are 3 bits wide:
//
//   000 HALT    halt; the result is the output tape
//   001 EMIT0   append 0 to the output tape
//   010 EMIT1   append 1 to the output tape
//   011 READ    copy one bit from the input register (no-op when exhausted)
//   100 JIE     skip the next instruction if the input is exhausted
//   101 DUP     output := output . output (costs |output| steps)
//   110 MARK    set the loop anchor to the next instruction
//   111 JBACK   jump to the loop anchor (initially instruction 0)
//
// Running past the last instruction halts with the current output. A plain
// program is any bit string whose length is a multiple of 3; a prefix-mode
// program is the self-delimiting wrap of a plain program.

enum class Mode { Plain, Prefix };

struct MicroProgram {
    std::string bits;
    Mode mode = Mode::Plain;
};

struct RunResult {
    enum class Status { Halted, OutOfBudget, Invalid };
    Status status = Status::Invalid;
    std::string output;
    std::uint64_t steps = 0;

    bool halted() const { return status == Status::Halted; }
};

// Documented fixed programs (conformance suite in the machine doc).
inline constexpr const char* kCopyInputProgram = "011100111000";  // READ JIE JBACK HALT
inline constexpr const char* kEmitEmptyProgram = "000";           // HALT
inline constexpr const char* kLoopForeverProgram = "111";         // JBACK
inline constexpr int kCopyInputProgramLen = 12;

// Reserved program-space identifiers for the prefix-universal wrapper used
// by the audit witness chain. Both live in the "100..." gap of the
// self-delimiting code set, so neither collides with a wrapped program.
inline constexpr const char* kDecoderRoutineId = "1000";
inline constexpr const char* kPmfProgramId = "1001";

RunResult run(const MicroProgram& program, const std::string& condition,
              std::uint64_t step_budget);

struct ComplexityEstimate {
    std::string target;
    std::string condition;
    Mode mode = Mode::Plain;
    std::optional<int> upper_bound;           // none: no witness within caps
    std::optional<MicroProgram> witness;
    int search_len_cap = 0;
    std::uint64_t step_budget = 0;
};

struct SearchCaps {
    int len_cap = 18;
    std::uint64_t step_budget = 4096;
};

// Bounded search: enumerate programs in length-then-lexicographic order and
// return the first one that halts on `condition` with output `target`.
// len_cap is limited to 26 (2^27 enumeration guard).
ComplexityEstimate complexity_upper(const std::string& target, const std::string& condition,
                                    Mode mode, SearchCaps caps);

// A length-m string whose bounded-search complexity is >= threshold, found
// by eliminating the outputs of every shorter program. Existence follows
// from counting, which is why 2^m > 2^threshold - 1 is required.
std::string high_complexity_witness(int m, int threshold, Mode mode,
                                    std::uint64_t step_budget = 4096);

// Enumerate valid program bit strings of exactly `len` bits in
// lexicographic order; returns false from the visitor to stop early.
void for_each_program(int len, Mode mode, const std::function<bool(const std::string&)>& fn);

}  // namespace quadriga::micro
