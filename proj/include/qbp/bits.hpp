#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbp {

// Assignments are plain bit vectors; bit 0 of a block is its most
// significant bit, and hex serialization packs bits MSB-first.
using Bits = std::vector<uint8_t>;

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int parity64(uint64_t x) { return __builtin_parityll(x); }

inline uint64_t block_get(const Bits& bits, size_t off, int width) {
    uint64_t v = 0;
    for (int j = 0; j < width; ++j) v = (v << 1) | bits[off + j];
    return v;
}

inline void block_set(Bits& bits, size_t off, int width, uint64_t val) {
    for (int j = 0; j < width; ++j) bits[off + j] = (val >> (width - 1 - j)) & 1;
}

// Expand an integer into n bits, most significant first. Used to sweep
// input spaces: index i <-> the assignment whose first variable is the
// top bit of i.
inline Bits bits_from_index(uint64_t value, size_t n) {
    Bits b(n);
    for (size_t i = 0; i < n; ++i) b[i] = (value >> (n - 1 - i)) & 1;
    return b;
}

inline uint64_t bits_to_index(const Bits& b) {
    if (b.size() > 64) throw std::invalid_argument("bits_to_index: more than 64 bits");
    uint64_t v = 0;
    for (uint8_t bit : b) v = (v << 1) | bit;
    return v;
}

inline std::string bits_to_hex(const Bits& b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve((b.size() + 3) / 4);
    for (size_t i = 0; i < b.size(); i += 4) {
        int nib = 0;
        for (size_t j = 0; j < 4; ++j) {
            nib <<= 1;
            if (i + j < b.size()) nib |= b[i + j];
        }
        out.push_back(digits[nib]);
    }
    return out;
}

inline Bits hex_to_bits(const std::string& hex, size_t n) {
    if (hex.size() * 4 < n) throw std::invalid_argument("hex_to_bits: string too short for " + std::to_string(n) + " bits");
    Bits b(n);
    for (size_t i = 0; i < n; ++i) {
        char c = hex[i / 4];
        int nib;
        if (c >= '0' && c <= '9') nib = c - '0';
        else if (c >= 'a' && c <= 'f') nib = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') nib = c - 'A' + 10;
        else throw std::invalid_argument("hex_to_bits: bad digit");
        b[i] = (nib >> (3 - i % 4)) & 1;
    }
    return b;
}

inline bool is_pow2(uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline int ceil_log2(uint64_t x) {
    int l = 0;
    while ((uint64_t(1) << l) < x) ++l;
    return l;
}

}  // namespace qbp
