// Shared primitives: bit vectors, hex codecs, error types.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace keylease {

// A bitstring stored one bit per byte (values 0/1), MSB-first by convention
// wherever a numeric interpretation is needed.
using Bits = std::vector<std::uint8_t>;

struct layout_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct degenerate_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parameter_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct decode_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct corrupt_ciphertext_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct protocol_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Bits xor_bits(const Bits& a, const Bits& b) {
    if (a.size() != b.size())
        throw parameter_error("xor_bits: length mismatch (" + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()) + ")");
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

inline Bits concat_bits(const Bits& a, const Bits& b) {
    Bits out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline Bits slice_bits(const Bits& x, std::size_t from, std::size_t to) {
    if (from > to || to > x.size()) throw parameter_error("slice_bits: bad range");
    return Bits(x.begin() + static_cast<std::ptrdiff_t>(from),
                x.begin() + static_cast<std::ptrdiff_t>(to));
}

// MSB-first hex, padded to a whole number of nibbles. The bit width must be
// carried separately (register layouts do this) for an exact round trip.
inline std::string bits_to_hex(const Bits& x) {
    static const char* digits = "0123456789abcdef";
    std::size_t nibbles = (x.size() + 3) / 4;
    std::size_t pad = nibbles * 4 - x.size();
    std::vector<unsigned> nib(nibbles, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t pos = i + pad;
        nib[pos / 4] = (nib[pos / 4] << 1) | x[i];
    }
    std::string out(nibbles, '0');
    for (std::size_t j = 0; j < nibbles; ++j) out[j] = digits[nib[j] & 0xF];
    return out;
}

inline Bits hex_to_bits(const std::string& hex, std::size_t width) {
    std::size_t nibbles = (width + 3) / 4;
    if (hex.size() != nibbles)
        throw decode_error("hex_to_bits: expected " + std::to_string(nibbles) +
                           " hex digits, got " + std::to_string(hex.size()));
    Bits out(width, 0);
    std::size_t pad = nibbles * 4 - width;
    for (std::size_t j = 0; j < nibbles; ++j) {
        char c = hex[j];
        unsigned v;
        if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
        else throw decode_error("hex_to_bits: invalid hex digit");
        for (unsigned k = 0; k < 4; ++k) {
            std::size_t pos = j * 4 + k;
            unsigned bit = (v >> (3 - k)) & 1u;
            if (pos < pad) {
                if (bit) throw decode_error("hex_to_bits: nonzero padding bit");
            } else {
                out[pos - pad] = static_cast<std::uint8_t>(bit);
            }
        }
    }
    return out;
}

// Fixed-width big-endian encode/decode of small integers into a bit vector.
inline void append_uint_bits(Bits& out, std::uint64_t value, unsigned width) {
    for (unsigned i = 0; i < width; ++i)
        out.push_back(static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u));
}

inline std::uint64_t read_uint_bits(const Bits& in, std::size_t& pos, unsigned width) {
    if (pos + width > in.size()) throw decode_error("read_uint_bits: out of range");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | in[pos + i];
    pos += width;
    return v;
}

}  // namespace keylease
