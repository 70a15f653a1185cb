#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tropvert/cap.hpp"
#include "tropvert/comb.hpp"
#include "tropvert/ring.hpp"

namespace tropvert {

enum class Var { x, y };

// (a, r) exponent pairs ordered by (a+r, a); this is also the canonical
// serialization order.
struct ExpDegLess {
    bool operator()(const std::pair<int, int> &p, const std::pair<int, int> &q) const
    {
        int dp = p.first + p.second, dq = q.first + q.second;
        if (dp != dq)
            return dp < dq;
        return p.first < q.first;
    }
};

// Truncated bivariate formal power series in x, y over a coefficient ring,
// exact within its cap. Immutable in spirit: operations return new values.
template <CoeffRing R> class GradedSeries {
  public:
    using TermMap = std::map<std::pair<int, int>, R, ExpDegLess>;

    explicit GradedSeries(Cap cap) : cap_(cap) {}

    static GradedSeries zero(Cap cap) { return GradedSeries(cap); }
    static GradedSeries constant(Cap cap, const R &c)
    {
        GradedSeries s(cap);
        s.set(0, 0, c);
        return s;
    }
    static GradedSeries one(Cap cap) { return constant(cap, R::one()); }
    static GradedSeries monomial(Cap cap, int a, int r, const R &c)
    {
        if (!cap.contains(a, r))
            throw OutOfCap("monomial (" + std::to_string(a) + "," + std::to_string(r) +
                           ") outside " + cap.str());
        GradedSeries s(cap);
        s.set(a, r, c);
        return s;
    }

    const Cap &cap() const { return cap_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    R coeff(int a, int r) const
    {
        if (!cap_.contains(a, r))
            throw OutOfCap("coeff (" + std::to_string(a) + "," + std::to_string(r) +
                           ") outside " + cap_.str());
        auto it = terms_.find({a, r});
        return it == terms_.end() ? R::zero() : it->second;
    }

    void set(int a, int r, const R &c)
    {
        if (!cap_.contains(a, r))
            return; // hard projection: out-of-cap exponents are discarded
        if (c.is_zero())
            terms_.erase({a, r});
        else
            terms_[{a, r}] = c;
    }

    void add_to(int a, int r, const R &c)
    {
        if (!cap_.contains(a, r) || c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace({a, r}, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    GradedSeries &operator+=(const GradedSeries &o)
    {
        require_same_cap(cap_, o.cap_, "series add");
        for (auto &[e, c] : o.terms_)
            add_to(e.first, e.second, c);
        return *this;
    }
    GradedSeries &operator-=(const GradedSeries &o)
    {
        require_same_cap(cap_, o.cap_, "series sub");
        for (auto &[e, c] : o.terms_)
            add_to(e.first, e.second, -c);
        return *this;
    }
    friend GradedSeries operator+(GradedSeries a, const GradedSeries &b) { return a += b; }
    friend GradedSeries operator-(GradedSeries a, const GradedSeries &b) { return a -= b; }
    friend GradedSeries operator-(const GradedSeries &a)
    {
        GradedSeries r(a.cap_);
        for (auto &[e, c] : a.terms_)
            r.terms_[e] = -c;
        return r;
    }

    friend GradedSeries operator*(const GradedSeries &a, const GradedSeries &b)
    {
        require_same_cap(a.cap_, b.cap_, "series mul");
        GradedSeries r(a.cap_);
        for (auto &[ea, ca] : a.terms_)
            for (auto &[eb, cb] : b.terms_) {
                int ax = ea.first + eb.first, rx = ea.second + eb.second;
                if (r.cap_.contains(ax, rx))
                    r.add_to(ax, rx, ca * cb);
            }
        return r;
    }
    GradedSeries &operator*=(const GradedSeries &o) { return *this = *this * o; }

    GradedSeries scale(const R &c) const
    {
        GradedSeries r(cap_);
        for (auto &[e, v] : terms_)
            r.add_to(e.first, e.second, v * c);
        return r;
    }

    friend bool operator==(const GradedSeries &a, const GradedSeries &b)
    {
        return a.cap_ == b.cap_ && a.terms_ == b.terms_;
    }

    // Multiplicative inverse; requires an invertible constant term.
    GradedSeries invert() const
    {
        R c0 = coeff(0, 0);
        if (!c0.is_invertible())
            throw NotInvertible("series constant term " + c0.str());
        R c0inv = c0.inverse();
        // f = c0 (1 - h), 1/f = (1/c0) sum h^m
        GradedSeries h = -(scale(c0inv));
        h.set(0, 0, R::zero());
        GradedSeries acc = one(cap_), power = one(cap_);
        for (int m = 1; m <= cap_.max_total(); ++m) {
            power *= h;
            if (power.is_zero())
                break;
            acc += power;
        }
        return acc.scale(c0inv);
    }

    // log, defined for constant term 1.
    GradedSeries log() const
    {
        if (!coeff(0, 0).is_one())
            throw BadConstantTerm("log needs constant term 1, got " + coeff(0, 0).str());
        GradedSeries g = *this;
        g.set(0, 0, R::zero());
        GradedSeries acc = zero(cap_), power = one(cap_);
        for (int m = 1; m <= cap_.max_total(); ++m) {
            power *= g;
            if (power.is_zero())
                break;
            acc += power.scale(R::from_rational(Rational((m % 2) ? 1 : -1, m)));
        }
        return acc;
    }

    // exp, defined for constant term 0.
    GradedSeries exp() const
    {
        if (!coeff(0, 0).is_zero())
            throw BadConstantTerm("exp needs constant term 0, got " + coeff(0, 0).str());
        GradedSeries acc = one(cap_), power = one(cap_);
        Rational mfact = Rational::one();
        for (int m = 1; m <= cap_.max_total(); ++m) {
            power *= *this;
            if (power.is_zero())
                break;
            mfact *= Rational(m);
            acc += power.scale(R::from_rational(Rational(1) / mfact));
        }
        return acc;
    }

    // Integer power, any invertible-constant series for negative exponents.
    GradedSeries pow_int(long e) const
    {
        if (e < 0)
            return invert().pow_int(-e);
        GradedSeries base = *this, acc = one(cap_);
        while (e > 0) {
            if (e & 1)
                acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    // f^e = exp(e log f) for a general ring exponent; integer exponents take
    // the multiplicative route and agree.
    GradedSeries pow(const R &e) const
    {
        if (auto n = e.as_integer())
            return pow_int(*n);
        return log().scale(e).exp();
    }

    // Term-by-term formal derivative.
    GradedSeries partial(Var v) const
    {
        GradedSeries r(cap_);
        for (auto &[ex, c] : terms_) {
            auto [a, rr] = ex;
            if (v == Var::x && a >= 1)
                r.add_to(a - 1, rr, c * R(static_cast<long>(a)));
            if (v == Var::y && rr >= 1)
                r.add_to(a, rr - 1, c * R(static_cast<long>(rr)));
        }
        return r;
    }

    // Retruncation to a subcap (always exact).
    GradedSeries recap(const Cap &newcap) const
    {
        if (!newcap.subset_of(cap_))
            throw CapMismatch("recap target " + newcap.str() + " not inside " + cap_.str());
        GradedSeries r(newcap);
        for (auto &[e, c] : terms_)
            if (newcap.contains(e.first, e.second))
                r.terms_[e] = c;
        return r;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (auto &[e, c] : terms_) {
            if (!out.empty())
                out += " + ";
            out += "(" + c.str() + ")";
            if (e.first)
                out += "*x^" + std::to_string(e.first);
            if (e.second)
                out += "*y^" + std::to_string(e.second);
        }
        return out;
    }

  private:
    Cap cap_;
    TermMap terms_;
};

enum class MacmahonSign { plus, minus };

// M(+-x)^power truncated: prod_{n <= a_max} (1 - (+-x)^n)^(-n*power).
template <CoeffRing R> GradedSeries<R> macmahon(MacmahonSign sign, const R &power, Cap cap)
{
    auto acc = GradedSeries<R>::one(cap);
    for (int n = 1; n <= cap.max_a(); ++n) {
        long s = (sign == MacmahonSign::minus && n % 2) ? -1 : 1;
        auto factor = GradedSeries<R>::one(cap);
        factor.add_to(n, 0, R(-s));
        acc *= factor.pow(R(static_cast<long>(-n)) * power);
    }
    return acc;
}

} // namespace tropvert
