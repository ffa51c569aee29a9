#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

#include <boost/multiprecision/gmp.hpp>

#include "morita/error.hpp"

namespace morita {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Coefficient field: the rationals (prime == 0) or the prime field F_p.
class Field {
public:
    constexpr Field() = default;

    static constexpr Field rationals() { return Field{}; }

    static Field prime(std::uint64_t p) {
        if (!is_prime(p) || p >= (std::uint64_t{1} << 32))
            throw Error(ErrorKind::field_mismatch, "characteristic " + std::to_string(p) + " is not a prime below 2^32");
        Field f;
        f.p_ = p;
        return f;
    }

    /// Parses "q" or "fp:<p>".
    static Field parse(const std::string& text) {
        if (text == "q" || text == "Q")
            return rationals();
        if (text.rfind("fp:", 0) == 0) {
            const std::string digits = text.substr(3);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw Error(ErrorKind::parse_error, "bad field selector '" + text + "'");
            return prime(std::stoull(digits));
        }
        throw Error(ErrorKind::parse_error, "bad field selector '" + text + "' (expected q or fp:<p>)");
    }

    constexpr bool is_rational() const { return p_ == 0; }
    constexpr std::uint64_t characteristic() const { return p_; }

    std::string name() const { return is_rational() ? "q" : "fp:" + std::to_string(p_); }

    friend constexpr bool operator==(Field, Field) = default;

    static constexpr bool is_prime(std::uint64_t n) {
        if (n < 2)
            return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

private:
    std::uint64_t p_ = 0;
};

/// Exact element of Q or F_p. Rationals stay in lowest terms (GMP canonicalises).
class Scalar {
public:
    Scalar() = default;

    Scalar(Field field, long long value) : field_(field) {
        if (field.is_rational())
            q_ = value;
        else
            r_ = reduce(value, field.characteristic());
    }

    Scalar(Field field, const Rational& value) : field_(field) {
        if (field.is_rational()) {
            q_ = value;
        } else {
            const std::uint64_t p = field.characteristic();
            const std::uint64_t num = reduce_big(boost::multiprecision::numerator(value), p);
            const std::uint64_t den = reduce_big(boost::multiprecision::denominator(value), p);
            if (den == 0)
                throw Error(ErrorKind::field_mismatch, "denominator vanishes in " + field.name());
            r_ = mul_mod(num, inverse_mod(den, p), p);
        }
    }

    static Scalar zero(Field f) { return Scalar(f, 0); }
    static Scalar one(Field f) { return Scalar(f, 1); }
    static Scalar sign(Field f, bool negative) { return Scalar(f, negative ? -1 : 1); }

    Field field() const { return field_; }

    bool is_zero() const { return field_.is_rational() ? q_.is_zero() : r_ == 0; }
    bool is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

    const Rational& rational() const { return q_; }
    std::uint64_t residue() const { return r_; }

    Scalar operator-() const {
        Scalar out = *this;
        if (field_.is_rational())
            out.q_ = -q_;
        else if (r_ != 0)
            out.r_ = field_.characteristic() - r_;
        return out;
    }

    Scalar& operator+=(const Scalar& o) {
        check(o);
        if (field_.is_rational())
            q_ += o.q_;
        else
            r_ = (r_ + o.r_) % field_.characteristic();
        return *this;
    }
    Scalar& operator-=(const Scalar& o) { return *this += -o; }
    Scalar& operator*=(const Scalar& o) {
        check(o);
        if (field_.is_rational())
            q_ *= o.q_;
        else
            r_ = mul_mod(r_, o.r_, field_.characteristic());
        return *this;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    Scalar inverse() const {
        if (is_zero())
            throw Error(ErrorKind::not_invertible, "division by zero");
        Scalar out = *this;
        if (field_.is_rational())
            out.q_ = 1 / q_;
        else
            out.r_ = inverse_mod(r_, field_.characteristic());
        return out;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        a.check(b);
        return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
    }

    /// Integer or p/q text; residues print as their representative in [0, p).
    std::string str() const {
        if (!field_.is_rational())
            return std::to_string(r_);
        return q_.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

    static std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }

    static std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
        // Fermat; p is prime.
        std::uint64_t result = 1, base = a % p, e = p - 2;
        while (e) {
            if (e & 1)
                result = mul_mod(result, base, p);
            base = mul_mod(base, base, p);
            e >>= 1;
        }
        return result;
    }

    static std::uint64_t reduce(long long v, std::uint64_t p) {
        const long long m = v % static_cast<long long>(p);
        return static_cast<std::uint64_t>(m < 0 ? m + static_cast<long long>(p) : m);
    }

    static std::uint64_t reduce_big(const Integer& v, std::uint64_t p) {
        Integer m = v % p;
        if (m < 0)
            m += p;
        return m.convert_to<std::uint64_t>();
    }

private:
    void check(const Scalar& o) const {
        if (!(field_ == o.field_))
            throw Error(ErrorKind::field_mismatch, "cannot combine scalars over " + field_.name() + " and " + o.field_.name());
    }

    Field field_;
    Rational q_;
    std::uint64_t r_ = 0;
};

/// Parses "a" or "a/b" (optional sign on a) into lowest terms.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    auto integer = [&](const std::string& t, bool allow_sign) {
        std::size_t i = allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size() || !std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                                          [](char c) { return c >= '0' && c <= '9'; }))
            throw Error(ErrorKind::parse_error, "malformed rational '" + text + "'");
        return Integer(t[0] == '+' ? t.substr(1) : t);
    };
    const Integer num = integer(text.substr(0, slash), true);
    if (slash == std::string::npos)
        return Rational(num);
    const Integer den = integer(text.substr(slash + 1), false);
    if (den == 0)
        throw Error(ErrorKind::parse_error, "zero denominator in '" + text + "'");
    return Rational(num) / Rational(den);
}

} // namespace morita
