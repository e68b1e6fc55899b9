#ifndef RADOQ_RATIONAL_HPP
#define RADOQ_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include "radoq/error.hpp"

namespace radoq {

using Integer = boost::multiprecision::cpp_int;

// Exact rational number with arbitrary-precision numerator and
// denominator.  Class invariant: gcd(num, den) == 1 and den > 0, so a
// value has exactly one representation and equality is structural.
// Zero is representable (0/1); operations that require a nonzero value
// say so in their contract.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(const Integer& n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { reduce(); }
    Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const { return Rational(raw_tag{}, -num_, den_); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // Multiplicative inverse; the value must be nonzero.
    Rational inverse() const {
        if (num_ == 0) throw InvalidRational("inverse of zero");
        return num_ < 0 ? Rational(raw_tag{}, -den_, -num_) : Rational(raw_tag{}, den_, num_);
    }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        reduce();
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        reduce();
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        reduce();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw InvalidRational("division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        reduce();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Integer power; pow(0, e) with e <= 0 is rejected.
    Rational pow(std::int64_t e) const {
        if (num_ == 0 && e <= 0) throw InvalidRational("zero to a nonpositive power");
        Rational base = e < 0 ? inverse() : *this;
        std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
        Rational acc(1);
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    // Textual form "n/d" in lowest terms, "/1" omitted.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) {
            s += '/';
            s += den_.str();
        }
        return s;
    }

    // Parses "n" or "n/d" with an optional leading minus.  Any other
    // shape, and a zero denominator, is rejected.
    static Rational parse(std::string_view text) {
        auto fail = [&] { throw InvalidRational("not a rational: '" + std::string(text) + "'"); };
        auto digits = [&](std::string_view part) {
            if (part.empty()) fail();
            for (char c : part)
                if (c < '0' || c > '9') fail();
            return Integer(std::string(part));
        };
        std::string_view rest = text;
        bool neg = false;
        if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
            neg = rest.front() == '-';
            rest.remove_prefix(1);
        }
        Integer n, d = 1;
        auto slash = rest.find('/');
        if (slash == std::string_view::npos) {
            n = digits(rest);
        } else {
            n = digits(rest.substr(0, slash));
            d = digits(rest.substr(slash + 1));
            if (d == 0) fail();
        }
        if (neg) n = -n;
        return Rational(std::move(n), std::move(d));
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  private:
    struct raw_tag {};
    Rational(raw_tag, Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) {}

    void reduce() {
        if (den_ == 0) throw InvalidRational("zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Integer g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Integer num_;
    Integer den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace radoq

template <>
struct std::hash<radoq::Rational> {
    std::size_t operator()(const radoq::Rational& r) const {
        return hash_value(r.num()) * 1000003u ^ hash_value(r.den());
    }
};

#endif
