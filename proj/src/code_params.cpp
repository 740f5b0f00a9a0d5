#include "code_params.hpp"

#include <json.hpp>

#include "errors.hpp"
#include "gf.hpp"

namespace strelay {

namespace {

std::int64_t checked_product(int lo_delta, int hi_delta, int base) {
    // prod over i in [lo_delta : hi_delta] of (base - i)
    __int128 p = 1;
    for (int i = lo_delta; i <= hi_delta; ++i) {
        p *= base - i;
        if (p > INT64_MAX) throw ConfigError("parameters too large: dimension overflow");
    }
    return static_cast<std::int64_t>(p);
}

nlohmann::json rational_json(const Rational& r) {
    return {{"num", r.num()}, {"den", r.den()}, {"approx", r.to_double()}};
}

}  // namespace

CodeParams derive_params(int n1_erasures, int n2_erasures, int delay,
                         std::uint32_t field_order, int multiplex) {
    if (n1_erasures < 1 || n2_erasures < 1 || delay < 1)
        throw ConfigError("N1, N2 and T must be positive");
    if (multiplex < 1) throw ConfigError("multiplex count must be positive");
    if (n1_erasures + n2_erasures > delay)
        throw ZeroCapacityError("N1 + N2 > T: capacity is zero");
    if (!Field::is_prime_power(field_order))
        throw ConfigError("field order must be a prime power");
    if (field_order <= static_cast<std::uint32_t>(delay) + 1)
        throw FieldTooSmallError("field order must exceed T + 1");

    CodeParams p;
    p.n1_erasures = n1_erasures;
    p.n2_erasures = n2_erasures;
    p.delay = delay;
    p.field_order = field_order;
    p.multiplex = multiplex;

    const int base = delay + 1 - n2_erasures;  // T+1-N2
    p.k_prime = delay + 1 - n1_erasures - n2_erasures;
    p.n_prime = base;
    p.k_dprime = base;
    p.n_dprime = delay + 1;

    p.k = checked_product(0, n1_erasures, base);
    p.layers_source = checked_product(0, n1_erasures - 1, base);
    p.layers_relay = checked_product(1, n1_erasures, base);
    p.n1 = p.layers_source * base;

    p.ell_j.reserve(n1_erasures);
    __int128 sum_ell = 0;
    for (int j = 0; j < n1_erasures; ++j) {
        p.ell_j.push_back(p.k / (delay - n2_erasures - j));
        sum_ell += p.ell_j.back();
    }
    __int128 n2_wide = __int128(delay + 1 - n1_erasures) * p.layers_relay + sum_ell;
    if (n2_wide > INT64_MAX) throw ConfigError("parameters too large: dimension overflow");
    p.n2 = static_cast<std::int64_t>(n2_wide);

    if (p.k != p.layers_source * p.k_prime || p.k != p.layers_relay * p.k_dprime)
        throw InternalFault("layer counts do not factor the message size");

    // Smallest h with q^h >= 2^(T+1).
    {
        const __int128 target = __int128(1) << (delay + 1);
        __int128 v = 1;
        int h = 0;
        while (v < target) {
            v *= field_order;
            ++h;
        }
        p.header_symbols = h;
    }

    p.r1 = Rational(p.k_prime, p.n_prime);
    Rational denom(delay + 1);
    for (int i = 0; i < n1_erasures; ++i)
        denom = denom + Rational(n1_erasures - i, base - (n1_erasures - i));
    p.r2_asymptotic = Rational(base) / denom;
    p.r2 = Rational(base) / (denom + Rational(p.header_symbols, multiplex));
    return p;
}

Rational achievable_rate(const CodeParams& p, bool include_header) {
    return min(p.r1, include_header ? p.r2 : p.r2_asymptotic);
}

Rational nonadaptive_rate(int n1_erasures, int n2_erasures, int delay) {
    if (n1_erasures + n2_erasures > delay)
        throw ZeroCapacityError("N1 + N2 > T: capacity is zero");
    return Rational(delay + 1 - n1_erasures - n2_erasures, delay + 1 - n1_erasures);
}

Rational trivial_bound(int n2_erasures, int delay) {
    return Rational(delay + 1 - n2_erasures, delay + 1);
}

Rational r1_bound(int n1_erasures, int n2_erasures, int delay) {
    return Rational(delay + 1 - n1_erasures - n2_erasures, delay + 1 - n2_erasures);
}

std::string CodeParams::to_json(int indent) const {
    nlohmann::json j{
        {"n1_erasures", n1_erasures},
        {"n2_erasures", n2_erasures},
        {"delay", delay},
        {"field_order", field_order},
        {"multiplex", multiplex},
        {"k", k},
        {"n1", n1},
        {"n2", n2},
        {"k_prime", k_prime},
        {"n_prime", n_prime},
        {"layers_source", layers_source},
        {"k_dprime", k_dprime},
        {"n_dprime", n_dprime},
        {"layers_relay", layers_relay},
        {"ell_j", ell_j},
        {"header_symbols", header_symbols},
        {"r1", rational_json(r1)},
        {"r2", rational_json(r2)},
        {"r2_asymptotic", rational_json(r2_asymptotic)},
    };
    return j.dump(indent);
}

}  // namespace strelay
