#include "quadriga/alphabet.hpp"

#include "quadriga/error.hpp"

namespace quadriga {

void Alphabet::validate() const {
    if (size < 2 || size > 10)
        raise(ErrorKind::Parameter, "alphabet size must be in [2, 10], got " + std::to_string(size));
}

void Alphabet::check(std::string_view s) const {
    for (char c : s) {
        if (!contains(c))
            raise(ErrorKind::InvalidSymbol,
                  std::string("symbol '") + c + "' outside alphabet of size " + std::to_string(size));
    }
}

std::string nat_digits(BigInt m, const Alphabet& alphabet) {
    alphabet.validate();
    if (m < 0) raise(ErrorKind::Parameter, "nat_digits requires m >= 0");
    if (m == 0) return "0";
    std::string out;
    while (m > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(m % alphabet.size)));
        m /= alphabet.size;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

BigInt digits_value(std::string_view digits, const Alphabet& alphabet) {
    alphabet.check(digits);
    BigInt v = 0;
    for (char c : digits) v = v * alphabet.size + (c - '0');
    return v;
}

SelfDelimited sd_encode(std::string_view payload, const Alphabet& alphabet) {
    alphabet.validate();
    alphabet.check(payload);
    const std::string len_field = nat_digits(BigInt(payload.size()), alphabet);
    std::string code;
    code.append(len_field.size() - 1, '1');
    code.push_back('0');
    code.append(len_field);
    code.append(payload);
    return SelfDelimited{std::string(payload), std::move(code)};
}

std::pair<std::string, std::string> sd_decode(std::string_view stream, const Alphabet& alphabet) {
    alphabet.validate();
    alphabet.check(stream);
    std::size_t i = 0;
    while (i < stream.size() && stream[i] == '1') ++i;
    if (i == stream.size())
        raise(ErrorKind::TruncatedCode, "stream exhausted inside the unary width marker");
    const std::size_t width = i + 1;  // '1' run of length w-1, then '0'
    ++i;                              // consume the '0'
    if (stream.size() - i < width)
        raise(ErrorKind::TruncatedCode, "stream exhausted inside the length field");
    const std::string_view len_field = stream.substr(i, width);
    if (width > 1 && len_field[0] == '0')
        raise(ErrorKind::MalformedCode, "non-canonical length field (leading zero)");
    i += width;
    const BigInt len = digits_value(len_field, alphabet);
    if (len > stream.size() - i)
        raise(ErrorKind::TruncatedCode, "stream exhausted inside the payload");
    const std::size_t payload_len = static_cast<std::size_t>(len);
    return {std::string(stream.substr(i, payload_len)), std::string(stream.substr(i + payload_len))};
}

bool sd_starts_with_code(std::string_view stream, const Alphabet& alphabet) {
    try {
        sd_decode(stream, alphabet);
        return true;
    } catch (const Error&) {
        return false;
    }
}

Paired pair_strings(const std::vector<std::string>& parts, const Alphabet& alphabet) {
    if (parts.empty()) raise(ErrorKind::Arity, "pairing requires at least one part");
    std::string combined;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) combined += sd_encode(parts[i], alphabet).code;
    alphabet.check(parts.back());
    combined += parts.back();
    return Paired{parts, std::move(combined)};
}

std::string project(std::string_view combined, std::size_t arity, std::size_t index,
                    const Alphabet& alphabet) {
    if (arity == 0) raise(ErrorKind::Arity, "pairing arity must be >= 1");
    if (index >= arity) raise(ErrorKind::Parameter, "projection index out of range");
    std::string_view rest = combined;
    std::vector<std::string> parts;
    for (std::size_t i = 0; i + 1 < arity; ++i) {
        try {
            auto [payload, remainder_str] = sd_decode(rest, alphabet);
            parts.push_back(std::move(payload));
            // sd_decode copies; re-anchor the view onto the original buffer.
            rest = combined.substr(combined.size() - remainder_str.size());
        } catch (const Error& e) {
            raise(ErrorKind::MalformedPairing,
                  std::string("not a valid pairing of arity ") + std::to_string(arity) + ": " + e.what());
        }
    }
    parts.emplace_back(rest);
    return parts[index];
}

long sd_overhead_bound(std::size_t payload_len, const Alphabet& alphabet) {
    // ceil(log_|A|(len+1)) via digit counting.
    BigInt len1 = BigInt(payload_len) + 1;
    long log_ceil = 0;
    BigInt p = 1;
    while (p < len1) {
        p *= alphabet.size;
        ++log_ceil;
    }
    return 2 * std::max<long>(1, log_ceil) + 1;
}

}  // namespace quadriga
