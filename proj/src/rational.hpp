#pragma once

#include <cstdint>
#include <string>

namespace strelay {

/// Exact rational over int64, always stored normalized (den > 0, gcd(num,den) = 1).
/// Intermediate products go through __int128 so desk-scale code parameters
/// (numerators up to ~1e12) never overflow.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;  // "num/den", or "num" when den == 1

private:
    struct Raw {};
    Rational(std::int64_t n, std::int64_t d, Raw) : num_(n), den_(d) {}
    static Rational normalized(__int128 n, __int128 d);

    std::int64_t num_;
    std::int64_t den_;
};

Rational min(const Rational& a, const Rational& b);

}  // namespace strelay
