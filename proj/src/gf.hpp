#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace strelay {

using Symbol = std::uint32_t;
using SymbolVec = std::vector<Symbol>;

/// Finite field GF(q). Supported orders: any prime p, and 2^e for e in [2,16].
/// Binary extension fields use log/exp tables over a primitive polynomial;
/// prime fields use modular arithmetic. Values are canonical 0..q-1 and
/// element(i) == i, which keeps every generator construction deterministic.
class Field {
public:
    explicit Field(std::uint32_t q);

    std::uint32_t size() const { return q_; }
    bool is_binary() const { return binary_; }

    Symbol add(Symbol a, Symbol b) const {
        if (binary_) return a ^ b;
        Symbol s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    Symbol sub(Symbol a, Symbol b) const {
        if (binary_) return a ^ b;
        return a >= b ? a - b : a + q_ - b;
    }
    Symbol neg(Symbol a) const {
        if (binary_) return a;
        return a == 0 ? 0 : q_ - a;
    }
    Symbol mul(Symbol a, Symbol b) const {
        if (binary_) {
            if (a == 0 || b == 0) return 0;
            return exp_[log_[a] + log_[b]];
        }
        return static_cast<Symbol>((std::uint64_t(a) * b) % q_);
    }
    Symbol inv(Symbol a) const;
    Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }

    /// a*b + c
    Symbol muladd(Symbol a, Symbol b, Symbol c) const { return add(mul(a, b), c); }

    /// Raw tables for tuned inner loops; valid only for binary fields.
    const std::uint16_t* log_table() const { return log_.data(); }
    const std::uint16_t* exp_table() const { return exp_.data(); }

    bool valid(Symbol a) const { return a < q_; }

    static bool is_prime_power(std::uint32_t q, std::uint32_t* base = nullptr,
                               std::uint32_t* exponent = nullptr);

private:
    std::uint32_t q_;
    bool binary_;
    std::vector<std::uint16_t> log_;  // index: element, value: discrete log
    std::vector<std::uint16_t> exp_;  // doubled cycle so mul() skips the mod
};

/// Split-nibble product tables for one GF(2^16) constant, stored as separate
/// low/high byte planes so the SIMD kernel can shuffle them directly:
/// c*x = entry(0, x&15) ^ entry(1, (x>>4)&15) ^ entry(2, (x>>8)&15)
///       ^ entry(3, x>>12), entry(p, n) = lo[p][n] | hi[p][n] << 8.
struct Gf16Tables {
    alignas(32) std::uint8_t lo[4][16];
    alignas(32) std::uint8_t hi[4][16];
};

/// Fills the tables for constant c (field must be GF(2^16)).
void gf16_build_tables(const Field& f, Symbol c, Gf16Tables& out);

/// dst[j] ^= c * src[j] for j in [0, n), using the tables of c. Dispatches to
/// an AVX2 kernel when the CPU has it; plain split-table lookups otherwise.
void gf16_muladd_row(const Gf16Tables& tb, std::uint16_t* dst, const std::uint16_t* src,
                     std::size_t n);

}  // namespace strelay
