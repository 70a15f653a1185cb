#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropvert/rational.hpp"
#include "tropvert/varname.hpp"

namespace tropvert {

// Exponent vector: sorted by VarName, all exponents > 0. Empty = the unit monomial.
using Monomial = std::vector<std::pair<VarName, int>>;

inline int monomial_degree(const Monomial &m)
{
    int d = 0;
    for (auto &[v, e] : m)
        d += e;
    return d;
}

// Graded-lexicographic order on the fixed VarName order.
struct MonomialGrlexLess {
    bool operator()(const Monomial &a, const Monomial &b) const
    {
        int da = monomial_degree(a), db = monomial_degree(b);
        if (da != db)
            return da < db;
        // Same degree: lexicographic, larger exponent on an earlier variable wins.
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first != b[j].first) {
                // the one holding the earlier variable is grlex-greater
                return b[j].first < a[i].first;
            }
            if (a[i].second != b[j].second)
                return a[i].second < b[j].second;
            ++i, ++j;
        }
        // One is a prefix of the other in the merged walk; the one with
        // variables left has a positive exponent on a later variable.
        return i < a.size();
    }
};

// Sparse multivariate polynomial over Rational.
class MultiPoly {
  public:
    using TermMap = std::map<Monomial, Rational, MonomialGrlexLess>;

    MultiPoly() = default; // zero
    MultiPoly(long n)
    {
        if (n != 0)
            terms_[{}] = Rational(n);
    }
    MultiPoly(int n) : MultiPoly(static_cast<long>(n)) {}
    MultiPoly(const Rational &q)
    {
        if (!q.is_zero())
            terms_[{}] = q;
    }

    static MultiPoly zero() { return MultiPoly(); }
    static MultiPoly one() { return MultiPoly(1); }
    static MultiPoly from_rational(const Rational &q) { return MultiPoly(q); }
    static MultiPoly variable(VarName v, int exp = 1)
    {
        MultiPoly p;
        if (exp < 0)
            throw IndexOutOfRange("negative exponent");
        if (exp == 0)
            return one();
        p.terms_[{{v, exp}}] = Rational::one();
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rational constant_value() const
    {
        if (terms_.empty())
            return Rational::zero();
        auto it = terms_.find({});
        return it == terms_.end() ? Rational::zero() : it->second;
    }
    bool is_one() const { return is_constant() && constant_value().is_one(); }
    bool is_invertible() const { return is_constant() && !is_zero(); }

    MultiPoly inverse() const
    {
        if (!is_invertible())
            throw NotInvertible("only nonzero constants are invertible: " + str());
        return MultiPoly(constant_value().inverse());
    }

    std::optional<long> as_integer() const
    {
        if (!is_constant())
            return std::nullopt;
        return constant_value().as_integer();
    }

    int total_degree() const
    {
        int d = 0;
        for (auto &[m, c] : terms_)
            d = std::max(d, monomial_degree(m));
        return d;
    }

    const TermMap &terms() const { return terms_; }

    MultiPoly &operator+=(const MultiPoly &o)
    {
        for (auto &[m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    MultiPoly &operator-=(const MultiPoly &o)
    {
        for (auto &[m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly &b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly &b) { return a -= b; }
    friend MultiPoly operator-(const MultiPoly &a)
    {
        MultiPoly r;
        for (auto &[m, c] : a.terms_)
            r.terms_[m] = -c;
        return r;
    }

    friend MultiPoly operator*(const MultiPoly &a, const MultiPoly &b)
    {
        MultiPoly r;
        for (auto &[ma, ca] : a.terms_)
            for (auto &[mb, cb] : b.terms_)
                r.add_term(merge_monomials(ma, mb), ca * cb);
        return r;
    }
    MultiPoly &operator*=(const MultiPoly &o) { return *this = *this * o; }

    friend bool operator==(const MultiPoly &a, const MultiPoly &b) { return a.terms_ == b.terms_; }

    MultiPoly pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        MultiPoly base = *this, acc = one();
        while (e > 0) {
            if (e & 1)
                acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    // Substitutes variables by polynomials; unbound variables stay.
    MultiPoly substitute(const std::map<VarName, MultiPoly> &bindings) const
    {
        MultiPoly r;
        for (auto &[m, c] : terms_) {
            MultiPoly term(c);
            for (auto &[v, e] : m) {
                auto it = bindings.find(v);
                if (it == bindings.end())
                    term *= variable(v, e);
                else
                    term *= it->second.pow(e);
            }
            r += term;
        }
        return r;
    }

    // Rational-valued substitution; bindings may be partial.
    MultiPoly specialize(const std::map<VarName, Rational> &bindings) const
    {
        std::map<VarName, MultiPoly> lifted;
        for (auto &[v, q] : bindings)
            lifted.emplace(v, MultiPoly(q));
        return substitute(lifted);
    }

    // Leading term first, e.g. "1/2*chi^2 + 5/2*chi".
    std::string str() const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto &[m, c] = *it;
            std::string t;
            if (m.empty() || !(c.is_one() || c == Rational(-1))) {
                t = c.str();
            } else if (c == Rational(-1)) {
                t = "-";
            }
            for (auto &[v, e] : m) {
                if (!t.empty() && t != "-")
                    t += "*";
                t += v.str();
                if (e > 1)
                    t += "^" + std::to_string(e);
            }
            if (!out.empty()) {
                if (!t.empty() && t[0] == '-') {
                    out += " - ";
                    t = t.substr(1);
                } else {
                    out += " + ";
                }
            }
            out += t;
        }
        return out;
    }

  private:
    void add_term(const Monomial &m, const Rational &c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    static Monomial merge_monomials(const Monomial &a, const Monomial &b)
    {
        Monomial r;
        r.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first == b[j].first) {
                r.emplace_back(a[i].first, a[i].second + b[j].second);
                ++i, ++j;
            } else if (a[i].first < b[j].first) {
                r.push_back(a[i++]);
            } else {
                r.push_back(b[j++]);
            }
        }
        for (; i < a.size(); ++i)
            r.push_back(a[i]);
        for (; j < b.size(); ++j)
            r.push_back(b[j]);
        return r;
    }

    TermMap terms_;
};

} // namespace tropvert
