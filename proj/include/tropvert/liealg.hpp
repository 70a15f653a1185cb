#pragma once

#include <optional>
#include <vector>

#include "tropvert/comb.hpp"
#include "tropvert/series.hpp"
#include "tropvert/vertex.hpp"

namespace tropvert {

// <(a,r),(a',r')> = a r' - r a', normalized by <gamma, mu> = -1.
inline long lie_pairing(std::pair<int, int> xi, std::pair<int, int> eta)
{
    return static_cast<long>(xi.first) * eta.second - static_cast<long>(xi.second) * eta.first;
}

// Finitely supported element of the graded Lie algebra g, coefficients of
// e_{(a,r)}; optionally living in the quotient g / g_{>R} (classes r <= R).
template <CoeffRing R> class LieElement {
  public:
    using TermMap = std::map<std::pair<int, int>, R, ExpDegLess>;

    explicit LieElement(Cap cap, std::optional<int> r_quotient = {})
        : cap_(cap), quotient_(r_quotient)
    {
    }

    static LieElement zero(Cap cap, std::optional<int> r_quotient = {})
    {
        return LieElement(cap, r_quotient);
    }

    const Cap &cap() const { return cap_; }
    std::optional<int> r_quotient() const { return quotient_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool keeps(int a, int r) const
    {
        return a + r >= 1 && cap_.contains(a, r) && (!quotient_ || r <= *quotient_);
    }

    R coeff(int a, int r) const
    {
        auto it = terms_.find({a, r});
        return it == terms_.end() ? R::zero() : it->second;
    }

    void add_to(int a, int r, const R &c)
    {
        if (!keeps(a, r) || c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace({a, r}, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    LieElement scale(const R &c) const
    {
        LieElement r(cap_, quotient_);
        for (auto &[e, v] : terms_)
            r.add_to(e.first, e.second, v * c);
        return r;
    }

    LieElement &operator+=(const LieElement &o)
    {
        require_compatible(o, "lie add");
        for (auto &[e, c] : o.terms_)
            add_to(e.first, e.second, c);
        return *this;
    }
    friend LieElement operator+(LieElement a, const LieElement &b) { return a += b; }
    friend LieElement operator-(const LieElement &a) { return a.scale(R(-1L)); }
    friend LieElement operator-(LieElement a, const LieElement &b) { return a += -b; }

    friend bool operator==(const LieElement &a, const LieElement &b)
    {
        return a.cap_ == b.cap_ && a.quotient_ == b.quotient_ && a.terms_ == b.terms_;
    }

    void require_compatible(const LieElement &o, const char *where) const
    {
        require_same_cap(cap_, o.cap_, where);
        if (quotient_ != o.quotient_)
            throw CapMismatch(std::string(where) + ": quotient mismatch");
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (auto &[e, c] : terms_) {
            if (!out.empty())
                out += " + ";
            out += "(" + c.str() + ")e" + Ray{e.first, e.second}.str();
        }
        return out;
    }

  private:
    Cap cap_;
    std::optional<int> quotient_;
    TermMap terms_;
};

// [e_xi, e_eta] = (-1)^{<xi,eta>} <xi,eta> e_{xi+eta}, extended bilinearly.
template <CoeffRing R> LieElement<R> bracket(const LieElement<R> &u, const LieElement<R> &v)
{
    u.require_compatible(v, "bracket");
    LieElement<R> out(u.cap(), u.r_quotient());
    for (auto &[xi, cu] : u.terms())
        for (auto &[eta, cv] : v.terms()) {
            int a = xi.first + eta.first, r = xi.second + eta.second;
            if (!out.keeps(a, r))
                continue;
            long p = lie_pairing(xi, eta);
            if (p == 0)
                continue;
            long factor = (p % 2) ? -p : p; // (-1)^p * p
            out.add_to(a, r, cu * cv * R(factor));
        }
    return out;
}

// The paper's conjugation operators: A = chi sum_{n,i} e_{in mu}/i^2 (so the
// e_{(m,0)} coefficient is chi J(m)), B = -sum_j e_{j gamma}/j^2.
template <CoeffRing R>
LieElement<R> operator_A(const R &chi, Cap cap, std::optional<int> r_quotient = {})
{
    LieElement<R> A(cap, r_quotient);
    for (int m = 1; m <= cap.max_a(); ++m)
        A.add_to(m, 0, chi * R::from_rational(comb::divisor_square_sum(m)));
    return A;
}

template <CoeffRing R> LieElement<R> operator_B(Cap cap, std::optional<int> r_quotient = {})
{
    LieElement<R> B(cap, r_quotient);
    for (int j = 1; j <= cap.max_r(); ++j)
        B.add_to(0, j, R::from_rational(Rational(-1, static_cast<long>(j) * j)));
    return B;
}

// Closed form of Ad^k_A(B): -chi^k sum_{n,i,j} (-1)^{j n.i} j^{k-2}
// (prod n_l / prod i_l) e_{n.i mu + j gamma}.
template <CoeffRing R>
LieElement<R> ad_power_closed(int k, const R &chi, Cap cap, std::optional<int> r_quotient = {})
{
    if (k < 1)
        throw IndexOutOfRange("ad power needs k >= 1");
    LieElement<R> out(cap, r_quotient);
    auto W = comb::composition_weights(cap.max_a());
    R chik = ring_pow(chi, k);
    int j_max = r_quotient ? std::min(cap.max_r(), *r_quotient) : cap.max_r();
    for (int a = k; a <= cap.max_a(); ++a) {
        if (W[k][a].is_zero())
            continue;
        for (int j = 1; j <= j_max; ++j) {
            long sgn = (static_cast<long>(j) * a % 2) ? -1 : 1;
            Rational scalar = Rational(sgn) * Rational(j).pow(k - 2) * W[k][a];
            out.add_to(a, j, -chik * R::from_rational(scalar));
        }
    }
    return out;
}

// log(exp(A) exp(B) exp(-A)) in closed form:
// -sum_j e_{j gamma}/j^2 + sum_k Ad^k_A(B)/k!.
template <CoeffRing R>
LieElement<R> log_lhs_closed(const R &chi, Cap cap, std::optional<int> r_quotient = {})
{
    LieElement<R> out = operator_B<R>(cap, r_quotient);
    Rational kfact = Rational::one();
    for (int k = 1; k <= cap.max_a(); ++k) {
        kfact *= Rational(k);
        out += ad_power_closed(k, chi, cap, r_quotient).scale(
            R::from_rational(Rational(1) / kfact));
    }
    return out;
}

// B + sum_k Ad^k_A(B)/k! by iterated brackets; terminates inside the cap.
template <CoeffRing R>
LieElement<R> bch_conjugate(const LieElement<R> &A, const LieElement<R> &B, int k_max)
{
    A.require_compatible(B, "bch_conjugate");
    LieElement<R> acc = B, P = B;
    Rational kfact = Rational::one();
    for (int k = 1; k <= k_max; ++k) {
        P = bracket(A, P);
        if (P.is_zero())
            break;
        kfact *= Rational(k);
        acc += P.scale(R::from_rational(Rational(1) / kfact));
    }
    return acc;
}

namespace detail {

// Right-nested bracket of a letter word: [w1 w2 ... wL] = ad(w1)...ad(w_{L-1}) wL.
template <CoeffRing R>
LieElement<R> nested_bracket(const std::vector<const LieElement<R> *> &letters)
{
    LieElement<R> e = *letters.back();
    for (size_t i = letters.size() - 1; i-- > 0;)
        e = bracket(*letters[i], e);
    return e;
}

} // namespace detail

// log(exp X exp Y) by the Dynkin series, truncated at the nilpotency weight
// of the quotient (every basis class of X, Y has gamma-level >= 1, so
// brackets of more than R letters vanish in g / g_{>R}).
template <CoeffRing R>
LieElement<R> bch_multiply(const LieElement<R> &X, const LieElement<R> &Y)
{
    X.require_compatible(Y, "bch_multiply");
    int weight_bound;
    auto min_level_ok = [](const LieElement<R> &e) {
        for (auto &[cls, c] : e.terms())
            if (cls.second < 1)
                return false;
        return true;
    };
    if (X.r_quotient() && min_level_ok(X) && min_level_ok(Y)) {
        weight_bound = *X.r_quotient();
    } else {
        weight_bound = X.cap().max_total();
        if (weight_bound > 8)
            throw NotNilpotent("no usable quotient and cap degree " +
                               std::to_string(weight_bound) + " is too deep");
    }

    LieElement<R> out = X + Y;
    // blocks (s_i, t_i), s_i + t_i >= 1, total weight 2..weight_bound;
    // weight-1 terms are the X + Y seed above
    std::vector<std::pair<int, int>> blocks;
    auto emit = [&]() {
        int n = static_cast<int>(blocks.size());
        auto [sn, tn] = blocks.back();
        if (tn >= 2 || (tn == 0 && sn >= 2))
            return; // innermost ad of a repeated letter vanishes
        std::vector<const LieElement<R> *> letters;
        int w = 0;
        Rational denom = Rational(n);
        for (auto [s, t] : blocks) {
            for (int i = 0; i < s; ++i)
                letters.push_back(&X);
            for (int i = 0; i < t; ++i)
                letters.push_back(&Y);
            w += s + t;
            denom *= Rational(comb::factorial(s)) * Rational(comb::factorial(t));
        }
        if (w < 2)
            return;
        denom *= Rational(w);
        auto term = detail::nested_bracket<R>(letters);
        if (term.is_zero())
            return;
        Rational c = Rational((n % 2) ? 1 : -1) / denom;
        out += term.scale(R::from_rational(c));
    };
    auto rec = [&](auto &&self, int remaining) -> void {
        for (int s = 0; s <= remaining; ++s)
            for (int t = 0; s + t <= remaining; ++t) {
                if (s + t == 0)
                    continue;
                blocks.emplace_back(s, t);
                emit();
                if (remaining - s - t >= 1)
                    self(self, remaining - s - t);
                blocks.pop_back();
            }
    };
    rec(rec, weight_bound);
    return out;
}

// In g / g_{>R}, equates log_lhs_closed with the BCH log of the slope-ordered
// candidate product prod T^{Omega(a,r)} and solves for Omega triangularly in
// increasing r. The unknown appears only linearly: brackets involving any
// level-r factor land above level r, and n>=2 tails land at level n r.
template <CoeffRing R>
std::vector<std::pair<std::pair<int, int>, R>>
solve_omega_liepath(const R &chi, int R_quot, int a_max)
{
    if (R_quot < 1 || R_quot > 3)
        throw NotNilpotent("lie path supports quotients R = 1..3");
    Cap cap = Cap::box(a_max, R_quot);
    auto L = log_lhs_closed(chi, cap, R_quot);

    std::map<std::pair<int, int>, R, ExpDegLess> omega;
    auto factor_log = [&](int a, int r) {
        LieElement<R> X(cap, R_quot);
        const R &om = omega.at({a, r});
        for (int n = 1; X.keeps(n * a, n * r); ++n)
            X.add_to(n * a, n * r,
                     -om * R::from_rational(Rational(1, static_cast<long>(n) * n)));
        return X;
    };

    for (int rp = 1; rp <= R_quot; ++rp) {
        LieElement<R> B(cap, R_quot);
        if (rp >= 2) {
            std::vector<std::pair<int, int>> classes;
            for (int r = 1; r < rp; ++r)
                for (int a = 0; a <= a_max; ++a)
                    if (!omega.at({a, r}).is_zero())
                        classes.push_back({a, r});
            std::stable_sort(classes.begin(), classes.end(), [](auto p, auto q) {
                return slope_before(Ray{p.first, p.second}, Ray{q.first, q.second},
                                    SlopeOrder::desc);
            });
            bool first = true;
            for (auto [a, r] : classes) {
                auto X = factor_log(a, r);
                B = first ? X : bch_multiply(B, X);
                first = false;
            }
        }
        for (int a = 0; a <= a_max; ++a)
            omega[{a, rp}] = B.coeff(a, rp) - L.coeff(a, rp);
    }

    std::vector<std::pair<std::pair<int, int>, R>> out;
    for (auto &[cls, om] : omega)
        out.emplace_back(cls, om);
    return out;
}

} // namespace tropvert
