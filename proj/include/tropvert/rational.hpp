#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "tropvert/errors.hpp"

namespace tropvert {

// Exact rational number. Always stored in lowest terms, denominator >= 1.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(long num, long den)
    {
        if (den == 0)
            throw NotInvertible("zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpz_class &n) : v_(n) {}
    explicit Rational(const mpq_class &q) : v_(q) { v_.canonicalize(); }

    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }
    static Rational from_rational(const Rational &q) { return q; }

    // Parses "p/q" or "p".
    static Rational parse(const std::string &s)
    {
        mpq_class q(s, 10);
        q.canonicalize();
        return Rational(q);
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_invertible() const { return !is_zero(); }

    Rational inverse() const
    {
        if (is_zero())
            throw NotInvertible("inverse of zero");
        return Rational(mpq_class(1 / v_));
    }

    std::optional<long> as_integer() const
    {
        if (!is_integer() || !v_.get_num().fits_slong_p())
            return std::nullopt;
        return v_.get_num().get_si();
    }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    Rational &operator+=(const Rational &o)
    {
        v_ += o.v_;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        v_ -= o.v_;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        v_ *= o.v_;
        return *this;
    }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero())
            throw NotInvertible("division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
    friend bool operator<(const Rational &a, const Rational &b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational &a, const Rational &b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational &a, const Rational &b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational &a, const Rational &b) { return a.v_ >= b.v_; }

    Rational pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        Rational base = *this, acc = one();
        while (e > 0) {
            if (e & 1)
                acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    // Substitution is trivial on constants; mirrors the coefficient-ring contract.
    template <typename Bindings> Rational substitute(const Bindings &) const { return *this; }

    // "p/q", or "p" when the denominator is 1.
    std::string str() const { return v_.get_str(); }

    const mpq_class &raw() const { return v_; }

  private:
    mpq_class v_;
};

} // namespace tropvert
