#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "tropvert/liealg.hpp"
#include "tropvert/numbertheory.hpp"
#include "tropvert/series.hpp"
#include "tropvert/vertex.hpp"

namespace tropvert {

enum class Method { factorization, liepath, closedform, joycesong };

inline std::string method_name(Method m)
{
    switch (m) {
    case Method::factorization: return "factorization";
    case Method::liepath: return "liepath";
    case Method::closedform: return "closedform";
    case Method::joycesong: return "joycesong";
    }
    return "?";
}

template <CoeffRing R> struct InvariantEntry {
    R omega;
    R dtbar;
    friend bool operator==(const InvariantEntry &, const InvariantEntry &) = default;
};

// Omega(a,r) and DT-bar(a,r) for every class in the cap, with provenance.
template <CoeffRing R> struct InvariantTable {
    R chi;
    Cap cap = Cap::box(0, 0);
    Method method = Method::factorization;
    std::map<std::pair<int, int>, InvariantEntry<R>, ExpDegLess> entries;

    const InvariantEntry<R> &at(int a, int r) const
    {
        auto it = entries.find({a, r});
        if (it == entries.end())
            throw IncompleteTable("no entry for class (" + std::to_string(a) + "," +
                                  std::to_string(r) + ")");
        return it->second;
    }
    R omega(int a, int r) const { return at(a, r).omega; }
    R dtbar(int a, int r) const { return at(a, r).dtbar; }
};

inline int class_gcd(int a, int r) { return std::gcd(a, r); } // gcd(0,r) = r

// DT-bar(a,r) = sum_{m | gcd(a,r)} Omega(a/m, r/m)/m^2.
template <CoeffRing R, typename OmegaFn> R dtbar_from_omega(int a, int r, OmegaFn omega)
{
    R s = R::zero();
    int g = class_gcd(a, r);
    for (int m = 1; m <= g; ++m)
        if (g % m == 0)
            s = s + omega(a / m, r / m) *
                        R::from_rational(Rational(1, static_cast<long>(m) * m));
    return s;
}

// Omega(a,r) = sum_{m | gcd(a,r)} mu(m)/m^2 DT-bar(a/m, r/m).
template <CoeffRing R, typename DtFn> R omega_from_dtbar(int a, int r, DtFn dtbar)
{
    R s = R::zero();
    int g = class_gcd(a, r);
    for (int m = 1; m <= g; ++m)
        if (g % m == 0)
            s = s + dtbar(a / m, r / m) *
                        R::from_rational(Rational(mobius(m), static_cast<long>(m) * m));
    return s;
}

// Left-hand side of the wall-crossing identity: the merged pure-D0 tail
// prod_{a <= a_max} T^{-chi}_{a,0} (one generator on ray (1,0) with function
// M(x)^chi) followed by T_{0,1}.
template <CoeffRing R> VertexWord<R> build_lhs(const R &chi, Cap cap)
{
    VertexWord<R> w;
    auto d0 = macmahon(MacmahonSign::plus, chi, cap);
    if (!(d0 == GradedSeries<R>::one(cap)))
        w.gens.emplace_back(Ray{1, 0}, d0);
    w.gens.push_back(make_T(Ray{0, 1}, R::one(), cap));
    return w;
}

// Closed-form evaluators for the rank 1..3 KS identities. The pair and
// triple sums include the a_i = 0 head terms with Omega(0,1) = 1.
template <CoeffRing R> class ClosedForms {
  public:
    ClosedForms(const R &chi, int a_max)
        : chi_(chi), a_max_(a_max), W_(comb::composition_weights(a_max))
    {
    }

    // sum_k j^{k-2} chi^k / k! * W_k(a)
    R sum_k(int a, int j) const
    {
        R total = R::zero();
        R chik = R::one();
        Rational kfact = Rational::one();
        for (int k = 1; k <= a; ++k) {
            chik = chik * chi_;
            kfact *= Rational(k);
            if (W_[k][a].is_zero())
                continue;
            total = total + chik * R::from_rational(Rational(j).pow(k - 2) / kfact * W_[k][a]);
        }
        return total;
    }

    // Omega(a,1); Omega(0,1) = 1 is the head of the r = 1 family.
    R omega_r1(int a) const
    {
        if (a == 0)
            return R::one();
        R s = sum_k(a, 1);
        return (a % 2) ? -s : s;
    }

    R omega_r2(int a) const
    {
        if (a == 0)
            return R::zero();
        R pair = pair_sum_r1r1(a) * R::from_rational(Rational((a % 2) ? -1 : 1, 2));
        R total = sum_k(a, 2) + pair;
        if (a % 2 == 0)
            total = total - omega_r1(a / 2) * R::from_rational(Rational(1, 4));
        return total;
    }

    R dtbar_r2(int a) const
    {
        R total = omega_r2(a);
        if (a % 2 == 0)
            total = total + omega_r1(a / 2) * R::from_rational(Rational(1, 4));
        return total;
    }

    R omega_r3(int a) const
    {
        if (a == 0)
            return R::zero();
        R total = sum_k(a, 3);
        if (a % 2)
            total = -total;
        auto q = [](long num, long den) { return R::from_rational(Rational(num, den)); };
        // 2+1 and 1+2 cross terms
        for (int a1 = 0; 2 * a1 < a; ++a1) {
            int a2 = a - 2 * a1;
            if (a1 < a2)
                total = total + q(a1 - a2, 4) * omega_r1(a1) * omega_r1(a2);
        }
        for (int a1 = 0; a1 < a; ++a1) {
            int a2 = a - a1;
            if (a1 < 2 * a2) {
                R term = q(a1 - 2 * a2, 2) * omega_r2(a1) * omega_r1(a2);
                total = total + ((a1 % 2) ? -term : term);
            }
        }
        for (int a2 = 1; 2 * a2 <= a; ++a2) {
            int a1 = a - 2 * a2;
            if (a1 < a2)
                total = total + q(a1 - a2, 4) * omega_r1(a1) * omega_r1(a2);
        }
        for (int a1 = 0; a1 < a; ++a1) {
            int a2 = a - a1;
            if (2 * a1 < a2) {
                R term = q(2 * a1 - a2, 2) * omega_r1(a1) * omega_r2(a2);
                total = total + ((a2 % 2) ? -term : term);
            }
        }
        // 1+1+1 terms with three distinct classes. The ordered-product BCH
        // gives the trilinear combination (1/6)([[X1,X2],X3] + [X1,[X2,X3]]),
        // not the 1/4 one would get for a plain two-factor product.
        for (int a1 = 0; a1 < a; ++a1)
            for (int a2 = a1 + 1; a1 + a2 < a; ++a2) {
                int a3 = a - a1 - a2;
                if (a3 <= a2)
                    continue;
                R triple = omega_r1(a1) * omega_r1(a2) * omega_r1(a3);
                total = total - q(static_cast<long>(a1 - a2) * (a1 + a2 - 2 * a3), 6) * triple;
                total = total - q(static_cast<long>(a2 - a3) * (2 * a1 - a2 - a3), 6) * triple;
            }
        for (int a1 = 0; 2 * a1 < a; ++a1) {
            int a2 = a - 2 * a1;
            if (a1 < a2) {
                long d2 = static_cast<long>(a1 - a2) * (a1 - a2);
                total = total - q(d2, 12) * omega_r1(a1) * omega_r1(a1) * omega_r1(a2);
            }
        }
        for (int a2 = 1; 2 * a2 <= a; ++a2) {
            int a1 = a - 2 * a2;
            if (a1 < a2) {
                long d2 = static_cast<long>(a1 - a2) * (a1 - a2);
                total = total - q(d2, 12) * omega_r1(a1) * omega_r1(a2) * omega_r1(a2);
            }
        }
        if (a % 3 == 0)
            total = total - omega_r1(a / 3) * R::from_rational(Rational(1, 9));
        return total;
    }

  private:
    // sum_{0 <= a' < a'', a'+a'' = a} (a' - a'') Omega(a',1) Omega(a'',1)
    R pair_sum_r1r1(int a) const
    {
        R s = R::zero();
        for (int ap = 0; 2 * ap < a; ++ap) {
            int app = a - ap;
            s = s + R(static_cast<long>(ap - app)) * omega_r1(ap) * omega_r1(app);
        }
        return s;
    }

    R chi_;
    int a_max_;
    std::vector<std::vector<Rational>> W_;
};

template <CoeffRing R> InvariantTable<R> omega_table(const R &chi, Cap cap, Method method)
{
    InvariantTable<R> table;
    table.chi = chi;
    table.cap = cap;
    table.method = method;

    std::map<std::pair<int, int>, R, ExpDegLess> omega;
    auto fill_class = [&](int a, int r, const R &v) { omega[{a, r}] = v; };

    switch (method) {
    case Method::factorization: {
        auto fact = factorize(build_lhs(chi, cap), cap, SlopeOrder::desc);
        for (Ray ray : primitive_rays_in(cap, SlopeOrder::desc)) {
            const GradedSeries<R> *f = fact.ray_function(ray);
            if (!f) {
                for (int m = 1; cap.contains(m * ray.a, m * ray.r); ++m)
                    fill_class(m * ray.a, m * ray.r, R::zero());
                continue;
            }
            for (auto &[m, om] : ray_function_to_BPS(ray, *f))
                fill_class(m * ray.a, m * ray.r, om);
        }
        break;
    }
    case Method::liepath: {
        if (cap.kind != Cap::Kind::box || cap.r_max < 1 || cap.r_max > 3)
            throw NotNilpotent("lie path needs a Box cap with 1 <= r_max <= 3");
        for (auto &[cls, om] : solve_omega_liepath(chi, cap.r_max, cap.a_max))
            fill_class(cls.first, cls.second, om);
        for (int a = 1; a <= cap.max_a(); ++a)
            fill_class(a, 0, -chi); // D0 column is input data on this path
        break;
    }
    case Method::closedform: {
        if (cap.kind != Cap::Kind::box || cap.r_max > 3)
            throw NotNilpotent("closed forms cover r <= 3 on a Box cap");
        ClosedForms<R> cf(chi, cap.max_a());
        for (int a = 1; a <= cap.max_a(); ++a)
            fill_class(a, 0, -chi);
        for (int r = 1; r <= cap.max_r(); ++r)
            for (int a = 0; a <= cap.max_a(); ++a) {
                if (!cap.contains(a, r))
                    continue;
                R v = r == 1 ? cf.omega_r1(a) : (r == 2 ? cf.omega_r2(a) : cf.omega_r3(a));
                if (a == 0)
                    v = (r == 1) ? R::one() : R::zero();
                fill_class(a, r, v);
            }
        break;
    }
    case Method::joycesong:
        throw Error("Joyce-Song tables are built by joycesong_table()");
    }

    auto omega_at = [&](int a, int r) -> R {
        auto it = omega.find({a, r});
        if (it == omega.end())
            throw IncompleteTable("missing class (" + std::to_string(a) + "," +
                                  std::to_string(r) + ")");
        return it->second;
    };
    for (auto &[cls, om] : omega) {
        auto [a, r] = cls;
        table.entries[cls] = {om, dtbar_from_omega<R>(a, r, omega_at)};
    }
    return table;
}

enum class InvertDirection { omega_to_dt, dt_to_omega };

// Recomputes one side of the table from the other; round trip is the identity.
template <CoeffRing R>
InvariantTable<R> mobius_invert(const InvariantTable<R> &t, InvertDirection direction)
{
    InvariantTable<R> out = t;
    for (auto &[cls, entry] : out.entries) {
        auto [a, r] = cls;
        if (direction == InvertDirection::omega_to_dt)
            entry.dtbar = dtbar_from_omega<R>(a, r, [&](int aa, int rr) { return t.omega(aa, rr); });
        else
            entry.omega = omega_from_dtbar<R>(a, r, [&](int aa, int rr) { return t.dtbar(aa, rr); });
    }
    return out;
}

// Z^BPS_{r,degen} = (1/r^2) M(-t)^{r chi}; the sign is pinned by the printed
// rank-2 Coulomb coefficients 1, -2, 7, -18, ...
template <CoeffRing R> GradedSeries<R> degenerate_partition(int r, const R &chi, Cap cap)
{
    if (r < 1)
        throw IndexOutOfRange("rank must be >= 1");
    return macmahon(MacmahonSign::minus, R(static_cast<long>(r)) * chi, cap)
        .scale(R::from_rational(Rational(1, static_cast<long>(r) * r)));
}

template <CoeffRing R> GradedSeries<R> coulomb_partition(int r, const R &chi, Cap cap)
{
    if (r < 1)
        throw IndexOutOfRange("rank must be >= 1");
    return macmahon(MacmahonSign::minus, R(static_cast<long>(r)) * chi, cap);
}

struct ConjectureLine {
    std::string statement;
    bool in_cap = false;
    bool holds = false;
    std::string lhs;
    std::string rhs;
};

// The suggested identities Omega(a, a-i) = Omega(a, i) and Omega(a,a) = -chi.
// Reported, never asserted.
template <CoeffRing R>
std::vector<ConjectureLine> conjecture_report(const InvariantTable<R> &t)
{
    std::vector<ConjectureLine> out;
    for (int a = 1; a <= t.cap.max_a(); ++a) {
        ConjectureLine diag;
        diag.statement = "Omega(" + std::to_string(a) + "," + std::to_string(a) + ") = -chi";
        diag.in_cap = t.cap.contains(a, a);
        if (diag.in_cap) {
            R lhs = t.omega(a, a);
            diag.lhs = lhs.str();
            diag.rhs = (-t.chi).str();
            diag.holds = lhs == -t.chi;
        }
        out.push_back(diag);
        for (int i = 1; 2 * i < a; ++i) {
            ConjectureLine line;
            line.statement = "Omega(" + std::to_string(a) + "," + std::to_string(a - i) +
                             ") = Omega(" + std::to_string(a) + "," + std::to_string(i) + ")";
            line.in_cap = t.cap.contains(a, a - i) && t.cap.contains(a, i);
            if (line.in_cap) {
                R lhs = t.omega(a, a - i), rhs = t.omega(a, i);
                line.lhs = lhs.str();
                line.rhs = rhs.str();
                line.holds = lhs == rhs;
            }
            out.push_back(line);
        }
    }
    return out;
}

inline bool table_all_integral(const InvariantTable<Rational> &t)
{
    for (auto &[cls, e] : t.entries)
        if (!e.omega.is_integer())
            return false;
    return true;
}

} // namespace tropvert
