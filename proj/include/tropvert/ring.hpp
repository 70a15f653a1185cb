#pragma once

#include <concepts>
#include <optional>
#include <string>

#include "tropvert/multipoly.hpp"
#include "tropvert/rational.hpp"

namespace tropvert {

// Coefficient-ring contract shared by Rational and MultiPoly: exact commutative
// ring with invertibility testing, exact inversion of invertible constants and
// integer-constant detection (used for fast integer powering).
template <typename R>
concept CoeffRing = requires(const R a, const R b, long n, const Rational q) {
    R();
    R(n);
    { R::zero() } -> std::convertible_to<R>;
    { R::one() } -> std::convertible_to<R>;
    { R::from_rational(q) } -> std::convertible_to<R>;
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_one() } -> std::convertible_to<bool>;
    { a.is_invertible() } -> std::convertible_to<bool>;
    { a.inverse() } -> std::convertible_to<R>;
    { a.as_integer() } -> std::convertible_to<std::optional<long>>;
    { a.str() } -> std::convertible_to<std::string>;
};

static_assert(CoeffRing<Rational>);
static_assert(CoeffRing<MultiPoly>);

template <CoeffRing R> R ring_pow(const R &base, long e)
{
    if (e < 0)
        return ring_pow(base.inverse(), -e);
    R b = base, acc = R::one();
    while (e > 0) {
        if (e & 1)
            acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

} // namespace tropvert
