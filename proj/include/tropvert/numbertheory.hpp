#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "tropvert/comb.hpp"
#include "tropvert/rational.hpp"

namespace tropvert {

inline long mobius(long m)
{
    if (m < 1)
        throw IndexOutOfRange("mobius needs m >= 1");
    long result = 1;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p)
            continue;
        m /= p;
        if (m % p == 0)
            return 0;
        result = -result;
    }
    if (m > 1)
        result = -result;
    return result;
}

// Exponents c_1..c_N of an Euler product prod_n (1 - t^n)^{-c_n}.
using EulerExponents = std::vector<long>;

inline long euler_exponent(const EulerExponents &c, int n)
{
    if (n < 1 || n > static_cast<int>(c.size()))
        throw IndexOutOfRange("Euler exponent index " + std::to_string(n) + " of " +
                              std::to_string(c.size()));
    return c[n - 1];
}

// [t^a] prod_n (1 - t^n)^{-c_n}, in multiplicity form: sum over partitions
// lambda of a of prod_i C(c_i - 1 + m_i, m_i), m_i the multiplicity of i.
inline Rational euler_coeff(const EulerExponents &c, int a)
{
    if (a == 0)
        return Rational::one();
    if (a < 0)
        return Rational::zero();
    if (a > static_cast<int>(c.size()))
        throw IndexOutOfRange("need c_1..c_" + std::to_string(a));
    mpz_class total = 0;
    for (auto &lambda : comb::partitions(a)) {
        auto m = comb::multiplicities(lambda, a);
        mpz_class prod = 1;
        for (int i = 1; i <= a && prod != 0; ++i)
            if (m[i])
                prod *= comb::binomial(mpz_class(euler_exponent(c, i)) - 1 + m[i], m[i]);
        total += prod;
    }
    return Rational(total);
}

// Same sum written in the conjugate coordinates p_i - p_{i+1} of a partition
// written weakly decreasing; equal to euler_coeff by conjugation.
inline Rational euler_coeff_conjugate(const EulerExponents &c, int a)
{
    if (a == 0)
        return Rational::one();
    if (a > static_cast<int>(c.size()))
        throw IndexOutOfRange("need c_1..c_" + std::to_string(a));
    mpz_class total = 0;
    for (auto &p : comb::partitions(a)) {
        mpz_class prod = 1;
        for (size_t i = 0; i < p.size() && prod != 0; ++i) {
            int step = p[i] - (i + 1 < p.size() ? p[i + 1] : 0);
            if (step)
                prod *= comb::binomial(mpz_class(euler_exponent(c, static_cast<int>(i) + 1)) - 1 +
                                           step,
                                       step);
        }
        total += prod;
    }
    return Rational(total);
}

struct CongruenceVerdict {
    std::string name;
    mpz_class lhs;
    mpz_class rhs;
    long modulus = 0;
    bool pass = false;

    std::string str() const
    {
        return name + ": " + lhs.get_str() + " vs " + rhs.get_str() + " mod " +
               std::to_string(modulus) + (pass ? " pass" : " FAIL");
    }
};

inline bool congruent(const mpz_class &x, const mpz_class &y, long mod)
{
    mpz_class d = x - y;
    return mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(mod)) != 0;
}

inline EulerExponents macmahon_exponents(long scale, int n_max)
{
    EulerExponents c(n_max);
    for (int n = 1; n <= n_max; ++n)
        c[n - 1] = scale * n;
    return c;
}

inline mpz_class as_int(const Rational &q)
{
    if (!q.is_integer())
        throw Error("expected integer, got " + q.str());
    return q.numerator();
}

// [t^a] M(t)^{2 chi}  ==  (-1)^{a/2} [t^{a/2}] M(t)^{chi}  (mod 4), 2 | a.
inline CongruenceVerdict check_mod4(int a, long chi)
{
    if (a < 2 || a % 2)
        throw IndexOutOfRange("check_mod4 needs even a >= 2");
    mpz_class lhs = as_int(euler_coeff(macmahon_exponents(2 * chi, a), a));
    mpz_class rhs = as_int(euler_coeff(macmahon_exponents(chi, a / 2), a / 2));
    if ((a / 2) % 2)
        rhs = -rhs;
    CongruenceVerdict v{"mod4(a=" + std::to_string(a) + ",chi=" + std::to_string(chi) + ")",
                        lhs, rhs, 4, false};
    v.pass = congruent(lhs, rhs, 4);
    return v;
}

// [t^a] M(-t)^{3 chi}  ==  [t^{a/3}] M(-t)^{chi}  (mod 9), 3 | a.
inline CongruenceVerdict check_mod9(int a, long chi)
{
    if (a < 3 || a % 3)
        throw IndexOutOfRange("check_mod9 needs 3 | a, a >= 3");
    // [t^a] M(-t)^c = (-1)^a [t^a] M(t)^c
    mpz_class lhs = as_int(euler_coeff(macmahon_exponents(3 * chi, a), a));
    if (a % 2)
        lhs = -lhs;
    mpz_class rhs = as_int(euler_coeff(macmahon_exponents(chi, a / 3), a / 3));
    if ((a / 3) % 2)
        rhs = -rhs;
    CongruenceVerdict v{"mod9(a=" + std::to_string(a) + ",chi=" + std::to_string(chi) + ")",
                        lhs, rhs, 9, false};
    v.pass = congruent(lhs, rhs, 9);
    return v;
}

// The six displayed binomial congruences behind the two lemmas, swept over
// i <= i_max, chi <= chi_max, xi <= xi_max.
inline std::vector<CongruenceVerdict> binom_congruences(int i_max, int chi_max, int xi_max)
{
    std::vector<CongruenceVerdict> out;
    auto push = [&](const std::string &name, mpz_class lhs, mpz_class rhs, long mod) {
        CongruenceVerdict v{name, lhs, rhs, mod, congruent(lhs, rhs, mod)};
        out.push_back(v);
    };
    for (int i = 1; i <= i_max; ++i)
        for (int chi = 1; chi <= chi_max; ++chi)
            for (int xi = 1; xi <= xi_max; ++xi) {
                std::string tag = "(i=" + std::to_string(i) + ",chi=" + std::to_string(chi) +
                                  ",xi=" + std::to_string(xi) + ")";
                mpz_class b2 = comb::binomial(mpz_class(2L * i * chi) - 1 + xi, xi);
                mpz_class b3 = comb::binomial(mpz_class(3L * i * chi) - 1 + xi, xi);
                if (xi % 2 == 1) {
                    push("binom2" + tag, b2, 0, 2);
                    if (i % 2 == 0)
                        push("binom4" + tag, b2, 0, 4);
                } else {
                    mpz_class half = comb::binomial(mpz_class(1L * i * chi) - 1 + xi / 2, xi / 2);
                    push("binom4-rescale" + tag, b2, (xi / 2) % 2 ? -half : half, 4);
                }
                if (xi % 3 != 0) {
                    push("binom3" + tag, b3, 0, 3);
                    if (i % 3 == 0)
                        push("binom9" + tag, b3, 0, 9);
                } else {
                    mpz_class third =
                        comb::binomial(mpz_class(1L * i * chi) - 1 + xi / 3, xi / 3);
                    mpz_class lhs = (xi % 2) ? mpz_class(-b3) : b3;
                    push("binom9-rescale" + tag, lhs, (xi / 3) % 2 ? -third : third, 9);
                }
            }
    return out;
}

} // namespace tropvert
