#include "gf.hpp"

namespace strelay {

namespace {

// Primitive polynomials for GF(2^e), e = 2..16, top bit included.
constexpr std::uint32_t kPrimitivePoly[17] = {
    0,      0,      0x7,    0xB,    0x13,   0x25,   0x43,   0x89,  0x11D,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

std::uint32_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = r * a % m;
        a = a * a % m;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

bool Field::is_prime_power(std::uint32_t q, std::uint32_t* base, std::uint32_t* exponent) {
    if (q < 2) return false;
    std::uint32_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = static_cast<std::uint32_t>(d);
            break;
        }
    }
    std::uint32_t e = 0;
    std::uint64_t v = 1;
    while (v < q) {
        v *= p;
        ++e;
    }
    if (v != q) return false;
    if (base) *base = p;
    if (exponent) *exponent = e;
    return true;
}

Field::Field(std::uint32_t q) : q_(q), binary_(false) {
    std::uint32_t p = 0, e = 0;
    if (!is_prime_power(q, &p, &e))
        throw ConfigError("field order " + std::to_string(q) + " is not a prime power");
    if (p == 2 && e >= 2) {
        if (e > 16)
            throw ConfigError("binary fields supported up to 2^16, got 2^" + std::to_string(e));
        binary_ = true;
        log_.assign(q_, 0);
        exp_.assign(2 * (q_ - 1), 0);
        const std::uint32_t poly = kPrimitivePoly[e];
        std::uint32_t b = 1;
        for (std::uint32_t i = 0; i < q_ - 1; ++i) {
            if (b == 1 && i != 0)
                throw InternalFault("primitive polynomial has short cycle");
            log_[b] = static_cast<std::uint16_t>(i);
            exp_[i] = static_cast<std::uint16_t>(b);
            exp_[i + q_ - 1] = static_cast<std::uint16_t>(b);
            b <<= 1;
            if (b & q_) b ^= poly;
        }
        if (b != 1) throw InternalFault("primitive polynomial does not generate the field");
    } else if (e > 1) {
        throw ConfigError("non-binary extension fields are not supported (q = " +
                          std::to_string(q) + "); use a prime or a power of two");
    } else {
        if (!is_prime(q)) throw InternalFault("prime check failed");
    }
}

Symbol Field::inv(Symbol a) const {
    if (a == 0) throw SingularSystemError("inverse of zero");
    if (binary_) return exp_[(q_ - 1) - log_[a]];
    return powmod(a, q_ - 2, q_);
}

void gf16_build_tables(const Field& f, Symbol c, Gf16Tables& out) {
    const std::uint16_t* log = f.log_table();
    const std::uint16_t* exp = f.exp_table();
    const std::uint16_t lc = c ? log[c] : 0;
    for (int part = 0; part < 4; ++part) {
        out.lo[part][0] = out.hi[part][0] = 0;
        for (Symbol nib = 1; nib < 16; ++nib) {
            const Symbol v = c ? exp[lc + log[nib << (4 * part)]] : 0;
            out.lo[part][nib] = static_cast<std::uint8_t>(v);
            out.hi[part][nib] = static_cast<std::uint8_t>(v >> 8);
        }
    }
}

namespace {

void muladd_row_scalar(const Gf16Tables& tb, std::uint16_t* dst, const std::uint16_t* src,
                       std::size_t n) {
    auto entry = [&tb](int part, std::uint16_t nib) -> std::uint16_t {
        return static_cast<std::uint16_t>(tb.lo[part][nib] | tb.hi[part][nib] << 8);
    };
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint16_t x = src[j];
        dst[j] ^= entry(0, x & 15) ^ entry(1, (x >> 4) & 15) ^ entry(2, (x >> 8) & 15) ^
                  entry(3, x >> 12);
    }
}

}  // namespace

}  // namespace strelay

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace strelay {
namespace {

// 16 symbols per iteration. Nibble indices sit in the low byte of each 16-bit
// lane, so a PSHUFB against the low-byte/high-byte halves of a table yields
// the product bytes directly (index-0 entries are zero, which the high bytes
// of the index lanes select).
__attribute__((target("avx2"))) void muladd_row_avx2(const Gf16Tables& tb,
                                                     std::uint16_t* dst,
                                                     const std::uint16_t* src,
                                                     std::size_t n) {
    __m256i lo[4], hi[4];
    for (int part = 0; part < 4; ++part) {
        lo[part] = _mm256_broadcastsi128_si256(
            _mm_load_si128(reinterpret_cast<const __m128i*>(tb.lo[part])));
        hi[part] = _mm256_broadcastsi128_si256(
            _mm_load_si128(reinterpret_cast<const __m128i*>(tb.hi[part])));
    }
    const __m256i nib_mask = _mm256_set1_epi16(0x000F);
    std::size_t j = 0;
    for (; j + 16 <= n; j += 16) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j));
        __m256i acc = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + j));
        for (int part = 0; part < 4; ++part) {
            const __m256i idx =
                _mm256_and_si256(_mm256_srli_epi16(v, 4 * part), nib_mask);
            const __m256i pl = _mm256_shuffle_epi8(lo[part], idx);
            const __m256i ph = _mm256_shuffle_epi8(hi[part], idx);
            acc = _mm256_xor_si256(acc, _mm256_xor_si256(pl, _mm256_slli_epi16(ph, 8)));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), acc);
    }
    if (j < n) muladd_row_scalar(tb, dst + j, src + j, n - j);
}

bool cpu_has_avx2() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
}

}  // namespace

void gf16_muladd_row(const Gf16Tables& tb, std::uint16_t* dst, const std::uint16_t* src,
                     std::size_t n) {
    static const bool avx2 = cpu_has_avx2();
    if (avx2)
        muladd_row_avx2(tb, dst, src, n);
    else
        muladd_row_scalar(tb, dst, src, n);
}

}  // namespace strelay
#else

namespace strelay {

void gf16_muladd_row(const Gf16Tables& tb, std::uint16_t* dst, const std::uint16_t* src,
                     std::size_t n) {
    muladd_row_scalar(tb, dst, src, n);
}

}  // namespace strelay
#endif
