#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "tropvert/rational.hpp"

namespace tropvert::comb {

inline mpz_class factorial(long n)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// Generalized binomial C(top, m) for any integer top, m >= 0.
inline mpz_class binomial(const mpz_class &top, long m)
{
    if (m < 0)
        return 0;
    mpz_class num = 1;
    for (long l = 0; l < m; ++l)
        num *= top - l;
    mpz_class r = num / factorial(m); // exact
    return r;
}

// J(m) = sum_{d | m} 1/d^2. Cached per integer (hot path in the Joyce-Song
// assembly sums); the cache is per-thread so values stay freely shareable.
inline Rational divisor_square_sum(long m)
{
    thread_local std::map<long, Rational> cache;
    auto it = cache.find(m);
    if (it != cache.end())
        return it->second;
    Rational s;
    for (long d = 1; d <= m; ++d)
        if (m % d == 0)
            s += Rational(1, d * d);
    cache.emplace(m, s);
    return s;
}

// Ordered partitions of a into exactly k positive parts.
inline std::vector<std::vector<int>> compositions(int a, int k)
{
    std::vector<std::vector<int>> out;
    if (a < k || k < 1)
        return out;
    std::vector<int> cur(k);
    auto rec = [&](auto &&self, int pos, int rest) -> void {
        if (pos == k - 1) {
            cur[pos] = rest;
            out.push_back(cur);
            return;
        }
        for (int v = 1; v <= rest - (k - 1 - pos); ++v) {
            cur[pos] = v;
            self(self, pos + 1, rest - v);
        }
    };
    rec(rec, 0, a);
    return out;
}

// Ordered partitions of a, all lengths.
inline std::vector<std::vector<int>> compositions_all(int a)
{
    std::vector<std::vector<int>> out;
    for (int k = 1; k <= a; ++k) {
        auto part = compositions(a, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// Unordered partitions of a, parts weakly decreasing.
inline std::vector<std::vector<int>> partitions(int a)
{
    std::vector<std::vector<int>> out;
    if (a == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> cur;
    auto rec = [&](auto &&self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int v = std::min(rest, maxpart); v >= 1; --v) {
            cur.push_back(v);
            self(self, rest - v, v);
            cur.pop_back();
        }
    };
    rec(rec, a, a);
    return out;
}

// Part multiplicities of a partition: m[i] = number of parts equal to i.
inline std::vector<int> multiplicities(const std::vector<int> &partition, int a)
{
    std::vector<int> m(a + 1, 0);
    for (int p : partition)
        m[p] += 1;
    return m;
}

// W[k][a] = sum over multi-indexes n, i of length k with n.i = a of
// prod(n_l)/prod(i_l); equivalently sum over ordered partitions p of a of
// length k of prod p_l * J(p_l). Computed by convolving w(m) = m * J(m).
inline std::vector<std::vector<Rational>> composition_weights(int a_max)
{
    std::vector<Rational> w(a_max + 1);
    for (int m = 1; m <= a_max; ++m)
        w[m] = Rational(m) * divisor_square_sum(m);
    std::vector<std::vector<Rational>> W(a_max + 1, std::vector<Rational>(a_max + 1));
    if (a_max >= 0)
        W[0][0] = Rational::one();
    for (int k = 1; k <= a_max; ++k)
        for (int a = k; a <= a_max; ++a) {
            Rational s;
            for (int m = 1; m <= a - (k - 1); ++m)
                s += w[m] * W[k - 1][a - m];
            W[k][a] = s;
        }
    return W;
}

} // namespace tropvert::comb
