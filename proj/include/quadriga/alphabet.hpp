#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadriga/rational.hpp"

namespace quadriga {

// Symbol strings are ASCII digit strings ("0110", "021", ...). The machine
// alphabet defaults to binary; sizes up to 10 keep the one-char-per-digit
// serialization.
struct Alphabet {
    int size = 2;

    static Alphabet binary() { return Alphabet{2}; }

    void validate() const;
    bool contains(char c) const { return c >= '0' && c < '0' + size; }
    // Throws invalid-symbol if any digit is outside the alphabet.
    void check(std::string_view s) const;
};

struct SelfDelimited {
    std::string payload;
    std::string code;
};

struct Paired {
    std::vector<std::string> parts;
    std::string combined;
};

// Shortest base-|alphabet| digit string of m; nat_digits(0) == "0".
std::string nat_digits(BigInt m, const Alphabet& alphabet = Alphabet::binary());
BigInt digits_value(std::string_view digits, const Alphabet& alphabet = Alphabet::binary());

// Length-prefixed self-delimiting code: a unary run of '1's terminated by
// '0' announces the width of the base-|alphabet| length field, which is
// followed by the payload. The code set is prefix-free.
SelfDelimited sd_encode(std::string_view payload, const Alphabet& alphabet = Alphabet::binary());

// Parses one self-delimited code from the front of the stream, returning
// (payload, remainder). The non-halting branch of the underlying parse is
// surfaced as truncated-code / malformed-code.
std::pair<std::string, std::string> sd_decode(std::string_view stream,
                                              const Alphabet& alphabet = Alphabet::binary());

// True if `stream` starts with a complete self-delimited code; never throws.
bool sd_starts_with_code(std::string_view stream, const Alphabet& alphabet = Alphabet::binary());

// Tuple encoding: every part but the last is self-delimited, the last is raw.
Paired pair_strings(const std::vector<std::string>& parts,
                    const Alphabet& alphabet = Alphabet::binary());

// Recovers part `index` of an arity-`arity` pairing. A stream that is not a
// valid pairing raises malformed-pairing.
std::string project(std::string_view combined, std::size_t arity, std::size_t index,
                    const Alphabet& alphabet = Alphabet::binary());

// 2*max(1, ceil(log_|A|(len+1))) + 1, the documented overhead bound.
long sd_overhead_bound(std::size_t payload_len, const Alphabet& alphabet = Alphabet::binary());

}  // namespace quadriga
