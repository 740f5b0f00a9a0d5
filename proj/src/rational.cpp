#include "rational.hpp"

#include <numeric>
#include <stdexcept>

namespace strelay {

using i128 = __int128;

Rational Rational::normalized(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    if (a != 0) {
        n /= a;
        d /= a;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
        throw std::overflow_error("rational overflow");
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d), Raw{});
}

Rational::Rational(std::int64_t n, std::int64_t d) {
    const Rational r = normalized(n, d);
    num_ = r.num_;
    den_ = r.den_;
}

Rational Rational::operator+(const Rational& o) const {
    return normalized(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return normalized(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return normalized(i128(num_) * o.num_, i128(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return normalized(i128(num_) * o.den_, i128(den_) * o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return i128(num_) * o.den_ < i128(o.num_) * den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }

}  // namespace strelay
