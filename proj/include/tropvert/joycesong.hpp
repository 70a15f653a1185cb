#pragma once

#include <vector>

#include "tropvert/comb.hpp"
#include "tropvert/dtcore.hpp"

namespace tropvert {

// Ordered partition of a positive integer; parts >= 1.
using OrderedPartition = std::vector<int>;

inline int partition_size(const OrderedPartition &p)
{
    int s = 0;
    for (int v : p)
        s += v;
    return s;
}

// ---- rank 1 ------------------------------------------------------------

// Joyce's S symbol of the decomposition (p, i), n = len(p) + 1 slots, gamma
// in place i. The see-saw inequalities for the D0-D6 stability data leave
// S = (-1)^{n-1} at i = 1, (-1)^{n-2} at i = 2 and 0 beyond.
inline long s_symbol_r1(const OrderedPartition &p, int i)
{
    int n = static_cast<int>(p.size()) + 1;
    if (i < 1 || i > n)
        throw IndexOutOfRange("place " + std::to_string(i) + " of " + std::to_string(n));
    if (i == 1)
        return (n - 1) % 2 ? -1 : 1;
    if (i == 2)
        return (n - 2) % 2 ? -1 : 1;
    return 0;
}

// U symbol via its definition: contract the head to a singleton (weight
// 1/(i-1)!), contract the tail by an ordered partition q of n-i (weight
// 1/prod q_l!), and read the S symbol of the contracted decomposition.
inline Rational u_symbol_r1_contractions(const OrderedPartition &p, int i)
{
    int n = static_cast<int>(p.size()) + 1;
    if (i < 1 || i > n)
        throw IndexOutOfRange("place out of range");
    Rational total;
    auto add_contraction = [&](int tail_len, const Rational &weight) {
        // contracted decomposition: optional head singleton, gamma, tail blocks
        OrderedPartition contracted(static_cast<size_t>(i > 1 ? 1 : 0) + tail_len, 1);
        total += weight * Rational(s_symbol_r1(contracted, i > 1 ? 2 : 1));
    };
    Rational head_weight = Rational(1) / Rational(comb::factorial(i - 1));
    if (n - i == 0) {
        add_contraction(0, head_weight);
        return total;
    }
    for (auto &q : comb::compositions_all(n - i)) {
        Rational w = head_weight;
        for (int ql : q)
            w /= Rational(comb::factorial(ql));
        add_contraction(static_cast<int>(q.size()), w);
    }
    return total;
}

// Closed form (-1)^{n-i} / ((i-1)! (n-i)!); independent of p.
inline Rational u_symbol_r1(const OrderedPartition &p, int i)
{
    int n = static_cast<int>(p.size()) + 1;
    if (i < 1 || i > n)
        throw IndexOutOfRange("place out of range");
    Rational v = Rational(1) / Rational(mpz_class(comb::factorial(i - 1) * comb::factorial(n - i)));
    return (n - i) % 2 ? -v : v;
}

// sum_{q ordered partition of s} (-1)^{len q} / prod q_l! = (-1)^s / s!.
inline bool helper_identity(int s)
{
    Rational lhs;
    for (auto &q : comb::compositions_all(s)) {
        Rational w = Rational(q.size() % 2 ? -1 : 1);
        for (int ql : q)
            w /= Rational(comb::factorial(ql));
        lhs += w;
    }
    Rational rhs = Rational(s % 2 ? -1 : 1) / Rational(comb::factorial(s));
    return lhs == rhs;
}

// The unique nonvanishing tree is the star rooted at the gamma slot:
// (-1)^a (-1)^{n+i} prod p_k.
inline Rational tree_factor_r1(const OrderedPartition &p, int i)
{
    int n = static_cast<int>(p.size()) + 1;
    int a = partition_size(p);
    Rational prod(1);
    for (int v : p)
        prod *= Rational(v);
    return ((a + n + i) % 2 ? -prod : prod);
}

// DT^- of the decomposition: (-chi)^{n-1} prod_k J(p_k), J(m) = sum_{d|m} 1/d^2.
template <CoeffRing R> R dt_minus(const OrderedPartition &p, const R &chi)
{
    R total = R::one();
    for (int v : p)
        total = total * (-chi) * R::from_rational(comb::divisor_square_sum(v));
    return total;
}

// DT-bar(a,1) = (-1)^a sum_n chi^{n-1}/(n-1)! sum_{p of a, len n-1} prod p_k J(p_k),
// by explicit enumeration of ordered partitions.
template <CoeffRing R> R dt_js_r1(int a, const R &chi)
{
    if (a < 1)
        throw IndexOutOfRange("a >= 1");
    R total = R::zero();
    for (int len = 1; len <= a; ++len) {
        Rational inner;
        for (auto &p : comb::compositions(a, len)) {
            Rational w(1);
            for (int v : p)
                w *= Rational(v) * comb::divisor_square_sum(v);
            inner += w;
        }
        total = total + ring_pow(chi, len) *
                            R::from_rational(inner / Rational(comb::factorial(len)));
    }
    return (a % 2) ? -total : total;
}

// ---- rank 2 ------------------------------------------------------------

namespace detail {

inline void check_decomp_r2(const OrderedPartition &p, int i, int j)
{
    int n = static_cast<int>(p.size()) + 2;
    if (p.empty())
        throw IndexOutOfRange("rank-2 residual decompositions carry at least one part");
    if (!(1 <= i && i < j && j <= n))
        throw IndexOutOfRange("places (" + std::to_string(i) + "," + std::to_string(j) +
                              ") of " + std::to_string(n));
}

// head/tail sums around the first gamma: H = p_1+..+p_{i-1}, T = rest.
inline std::pair<int, int> head_tail(const OrderedPartition &p, int i)
{
    int H = 0;
    for (int k = 0; k < i - 1 && k < static_cast<int>(p.size()); ++k)
        H += p[k];
    return {H, partition_size(p) - H};
}

} // namespace detail

// Sum over admissible trees for the decomposition (p, i, j), enumerated
// directly: every mu-part attaches to one of the two gamma slots, except one
// special part attached to both; the edge {u, v} with positions u < v
// contributes (-1)^{<beta_v, beta_u>} <beta_v, beta_u>.
inline Rational tree_sum_r2_enum(const OrderedPartition &p, int i, int j)
{
    detail::check_decomp_r2(p, i, j);
    int L = static_cast<int>(p.size());
    std::vector<int> positions(L), parts(L);
    for (int k = 0; k < L; ++k) {
        int slot = k + 1;
        if (slot >= i)
            ++slot;
        if (slot >= j)
            ++slot;
        positions[k] = slot;
        parts[k] = p[k];
    }
    auto edge = [&](int part, int mu_pos, int gamma_pos) -> long {
        // <p mu, gamma> = p, <gamma, p mu> = -p; orientation later -> earlier
        long v = mu_pos > gamma_pos ? part : -part;
        return (part % 2) ? -v : v; // (-1)^{+-p} = (-1)^p
    };
    Rational total;
    for (int l = 0; l < L; ++l) {
        // others attach to i or j independently
        for (long mask = 0; mask < (1L << (L - 1)); ++mask) {
            long factor = edge(parts[l], positions[l], i) * edge(parts[l], positions[l], j);
            int bit = 0;
            for (int k = 0; k < L; ++k) {
                if (k == l)
                    continue;
                int target = (mask >> bit++) & 1 ? j : i;
                factor *= edge(parts[k], positions[k], target);
            }
            total += Rational(factor);
        }
    }
    return total;
}

// Closed form of the tree sum, collapsed from the parametrized enumeration:
// only adjacent placements survive the binomial cancellation, weighted by
// the signed head/tail sums for j = i+1 and by the middle part for j = i+2.
inline Rational tree_sum_r2_closed(const OrderedPartition &p, int i, int j)
{
    detail::check_decomp_r2(p, i, j);
    int n = static_cast<int>(p.size()) + 2;
    int a = partition_size(p);
    if (j != i + 1 && j != i + 2)
        return Rational(0);
    Rational prod(1);
    for (int v : p)
        prod *= Rational(v);
    long weight;
    int sign_exp = a;
    if (j == i + 1) {
        // sum_{tail} (-1)^{p_l} p_l - sum_{head} (-1)^{p_l} p_l, head = parts 1..i-1
        weight = 0;
        for (int k = 0; k < static_cast<int>(p.size()); ++k) {
            long w = (p[k] % 2) ? -p[k] : p[k];
            weight += (k < i - 1) ? -w : w;
        }
        sign_exp += i - 1;
    } else {
        weight = p[i - 1];
        sign_exp += i + p[i - 1];
    }
    Rational value = Rational(mpz_class(mpz_class(1) << (n - 3))) * prod * Rational(weight);
    return sign_exp % 2 ? -value : value;
}

// U symbol of a two-gamma decomposition: the first-order contraction term
// plus, for 2 | a, the second-order (split) term. The delta structure is
// pinned against the KS path; see u_symbol_r2_pinning in the tests.
inline Rational u_symbol_r2(const OrderedPartition &p, int i, int j)
{
    detail::check_decomp_r2(p, i, j);
    int n = static_cast<int>(p.size()) + 2;
    int a = partition_size(p);
    if (j != i + 1 && j != i + 2)
        return Rational(0);
    auto [H, T] = detail::head_tail(p, i);
    Rational base =
        Rational(1) / Rational(mpz_class(comb::factorial(i - 1) * comb::factorial(n - i - 1)));
    if ((n - i - 1) % 2)
        base = -base;
    Rational first, second;
    if (j == i + 1) {
        first = base * Rational(H >= T ? 1 : -1) / Rational(2);
        if (a % 2 == 0 && H == T)
            second = -base / Rational(2);
    } else {
        int Hp = H + p[i - 1], Tp = T - p[i - 1];
        first = base * Rational((H < T && Hp >= Tp) ? 1 : 0);
        if (a % 2 == 0)
            second = base * Rational((Hp == Tp ? 1 : 0) - (H == T ? 1 : 0)) / Rational(2);
    }
    return first + second;
}

// DT-bar(a,2): the scaled copy of the rank-1 sum plus the residual over
// decompositions with two gamma slots. The residual is assembled per
// ordered partition p and split point i (the gamma pair sitting after the
// first i-1 parts), with the collapsed weight
//     (1/4) (H - T) (delta_{H<T} - delta_{H>=T}) / ((i-1)! (n-i-1)!)
// times chi^{len} prod p_k J(p_k): the ordering deltas act antisymmetrically
// on the head/tail sums, which is what turns the split sum into the pair sum
// (a'-a'') Omega(a',1) Omega(a'',1) of the wall-crossing identity under the
// rearrangement identity for prod p J(p).
template <CoeffRing R> R dt_js_r2(int a, const R &chi)
{
    if (a < 1)
        throw IndexOutOfRange("a >= 1");
    // scaled term: sum_n 2^{n-3} chi^{n-1}/(n-1)! sum_{p, len n-1} prod p J(p)
    R total = R::zero();
    for (int len = 1; len <= a; ++len) {
        Rational inner;
        for (auto &p : comb::compositions(a, len)) {
            Rational w(1);
            for (int v : p)
                w *= Rational(v) * comb::divisor_square_sum(v);
            inner += w;
        }
        Rational pow2 = (len >= 2) ? Rational(mpz_class(mpz_class(1) << (len - 2)))
                                   : Rational(1, 2); // 2^{n-3}, n = len+1
        total = total +
                ring_pow(chi, len) * R::from_rational(inner * pow2 / Rational(comb::factorial(len)));
    }
    // residual over split decompositions
    for (int len = 1; len <= a; ++len) {
        for (auto &p : comb::compositions(a, len)) {
            Rational pj(1);
            for (int v : p)
                pj *= Rational(v) * comb::divisor_square_sum(v);
            int H = 0;
            for (int v = 0; v <= len; ++v) {
                if (v > 0)
                    H += p[v - 1];
                int T = a - H;
                if (H == T)
                    continue;
                Rational kernel = Rational(H - T) * Rational(H < T ? 1 : -1, 4);
                Rational weight = kernel / Rational(mpz_class(comb::factorial(v) *
                                                              comb::factorial(len - v)));
                total = total + ring_pow(chi, len) * R::from_rational(weight * pj);
            }
        }
    }
    return total;
}

// Joyce-Song-side table for r <= 2 (Omega from DT-bar by Moebius inversion).
template <CoeffRing R> InvariantTable<R> joycesong_table(const R &chi, int a_max, int r_max = 2)
{
    if (r_max < 1 || r_max > 2)
        throw IndexOutOfRange("Joyce-Song tables cover r <= 2");
    InvariantTable<R> t;
    t.chi = chi;
    t.cap = Cap::box(a_max, r_max);
    t.method = Method::joycesong;
    std::map<std::pair<int, int>, R, ExpDegLess> dt;
    dt[{0, 1}] = R::one();
    for (int a = 1; a <= a_max; ++a) {
        dt[{a, 0}] = dtbar_from_omega<R>(a, 0, [&](int, int) { return -chi; });
        dt[{a, 1}] = dt_js_r1(a, chi);
    }
    if (r_max >= 2) {
        dt[{0, 2}] = R::from_rational(Rational(1, 4));
        for (int a = 1; a <= a_max; ++a)
            dt[{a, 2}] = dt_js_r2(a, chi);
    }
    auto dt_at = [&](int a, int r) -> R {
        auto it = dt.find({a, r});
        if (it == dt.end())
            throw IncompleteTable("class (" + std::to_string(a) + "," + std::to_string(r) + ")");
        return it->second;
    };
    for (auto &[cls, v] : dt) {
        auto [a, r] = cls;
        t.entries[cls] = {omega_from_dtbar<R>(a, r, dt_at), v};
    }
    return t;
}

// ---- rank 3 structure --------------------------------------------------

// Admissible trees for a three-gamma decomposition come in two shapes: one
// part bridging all three gamma slots ("one cap", square weights p_l^2) or
// two parts bridging two slots each ("two caps", double products).
struct TreeShapesR3 {
    Rational one_cap;
    Rational two_cap;
    long one_cap_count = 0;
    long two_cap_count = 0;
    // slice of the one-cap sum with the cap at part l, and of the two-cap
    // sum with bridges at parts {l1 < l2}
    std::map<int, Rational> one_cap_by_part;
    std::map<std::pair<int, int>, Rational> two_cap_by_pair;
    Rational total() const { return one_cap + two_cap; }
};

inline TreeShapesR3 tree_shapes_r3(const OrderedPartition &p, int i, int j, int k)
{
    int L = static_cast<int>(p.size());
    int n = L + 3;
    if (!(1 <= i && i < j && j < k && k <= n) || L < 1)
        throw IndexOutOfRange("bad three-gamma decomposition");
    std::vector<int> positions(L);
    {
        int slot = 1, part = 0;
        for (; slot <= n; ++slot)
            if (slot != i && slot != j && slot != k)
                positions[part++] = slot;
    }
    auto edge = [&](int part, int mu_pos, int gamma_pos) -> long {
        long v = mu_pos > gamma_pos ? part : -part;
        return (part % 2) ? -v : v;
    };
    int gammas[3] = {i, j, k};
    TreeShapesR3 out;
    // assignment of each part to a nonempty subset of the gamma slots with
    // total extra degree 2, connecting all three slots
    std::vector<int> subset(L);
    auto rec = [&](auto &&self, int idx, int extra) -> void {
        if (idx == L) {
            if (extra != 2)
                return;
            // connectivity of {i,j,k} through shared parts
            bool joined[3][3] = {};
            for (int t = 0; t < 3; ++t)
                joined[t][t] = true;
            for (int part = 0; part < L; ++part)
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y)
                        if ((subset[part] >> x & 1) && (subset[part] >> y & 1))
                            joined[x][y] = true;
            for (int rep = 0; rep < 3; ++rep)
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y)
                        for (int z = 0; z < 3; ++z)
                            if (joined[x][y] && joined[y][z])
                                joined[x][z] = true;
            if (!(joined[0][1] && joined[0][2]))
                return;
            Rational factor(1);
            int cap_part = -1;
            std::vector<int> bridges;
            for (int part = 0; part < L; ++part) {
                int deg = __builtin_popcount(static_cast<unsigned>(subset[part]));
                if (deg == 3)
                    cap_part = part;
                else if (deg == 2)
                    bridges.push_back(part);
                for (int t = 0; t < 3; ++t)
                    if (subset[part] >> t & 1)
                        factor *= Rational(edge(p[part], positions[part], gammas[t]));
            }
            if (cap_part >= 0) {
                out.one_cap += factor;
                out.one_cap_count += 1;
                out.one_cap_by_part[cap_part] += factor;
            } else {
                out.two_cap += factor;
                out.two_cap_count += 1;
                out.two_cap_by_pair[{bridges[0], bridges[1]}] += factor;
            }
            return;
        }
        for (int s = 1; s < 8; ++s) {
            int extra_here = __builtin_popcount(static_cast<unsigned>(s)) - 1;
            if (extra + extra_here > 2)
                continue;
            subset[idx] = s;
            self(self, idx + 1, extra + extra_here);
        }
    };
    rec(rec, 0, 0);
    return out;
}

} // namespace tropvert
