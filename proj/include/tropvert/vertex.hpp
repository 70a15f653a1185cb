#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <vector>

#include "tropvert/series.hpp"

namespace tropvert {

// A direction (a, r) in the positive cone, (a, r) != (0, 0).
struct Ray {
    int a = 0;
    int r = 0;

    friend auto operator<=>(const Ray &, const Ray &) = default;

    int gcd() const { return std::gcd(a, r); }
    bool is_primitive() const { return gcd() == 1; }
    Ray primitive() const
    {
        int g = gcd();
        return {a / g, r / g};
    }
    std::string str() const { return "(" + std::to_string(a) + "," + std::to_string(r) + ")"; }
};

inline Ray make_ray(int a, int r)
{
    if (a < 0 || r < 0 || (a == 0 && r == 0))
        throw IndexOutOfRange("ray must be in the positive cone: (" + std::to_string(a) + "," +
                              std::to_string(r) + ")");
    return {a, r};
}

enum class SlopeOrder { desc, asc };

// desc: decreasing slope r/a, (0,1) first, (1,0) last.
inline bool slope_before(Ray p, Ray q, SlopeOrder order)
{
    long lhs = static_cast<long>(p.r) * q.a;
    long rhs = static_cast<long>(q.r) * p.a;
    return order == SlopeOrder::desc ? lhs > rhs : lhs < rhs;
}

// One automorphism theta_{(a,r),f}: x -> f^{-r} x, y -> f^{a} y.  The ray is
// kept primitive; constructing from a non-primitive direction (ma, mr) with
// function g yields the identical automorphism theta_{(a,r), g^m}.
template <CoeffRing R> class VertexGenerator {
  public:
    VertexGenerator(Ray ray, GradedSeries<R> f) : ray_(ray), f_(std::move(f))
    {
        int g = ray_.gcd();
        if (g == 0)
            throw IndexOutOfRange("generator ray (0,0)");
        if (g > 1) {
            ray_ = ray_.primitive();
            f_ = f_.pow_int(g);
        }
        validate();
    }

    const Ray &ray() const { return ray_; }
    const GradedSeries<R> &f() const { return f_; }
    const Cap &cap() const { return f_.cap(); }

    VertexGenerator inverse() const { return VertexGenerator(ray_, f_.invert()); }

    // x^alpha y^beta -> f^{a beta - r alpha} x^alpha y^beta, extended linearly.
    GradedSeries<R> apply(const GradedSeries<R> &s) const
    {
        require_same_cap(f_.cap(), s.cap(), "generator apply");
        GradedSeries<R> out(s.cap());
        long wmin = 0, wmax = 0;
        for (auto &[e, c] : s.terms()) {
            long w = static_cast<long>(ray_.a) * e.second - static_cast<long>(ray_.r) * e.first;
            wmin = std::min(wmin, w);
            wmax = std::max(wmax, w);
        }
        std::map<long, GradedSeries<R>> powers;
        powers.emplace(0, GradedSeries<R>::one(s.cap()));
        for (long w = 1; w <= wmax; ++w)
            powers.emplace(w, powers.at(w - 1) * f_);
        if (wmin < 0) {
            auto finv = f_.invert();
            for (long w = -1; w >= wmin; --w)
                powers.emplace(w, powers.at(w + 1) * finv);
        }
        for (auto &[e, c] : s.terms()) {
            long w = static_cast<long>(ray_.a) * e.second - static_cast<long>(ray_.r) * e.first;
            for (auto &[pe, pc] : powers.at(w).terms())
                out.add_to(e.first + pe.first, e.second + pe.second, c * pc);
        }
        return out;
    }

    GradedSeries<R> multiplier_x() const { return f_.pow_int(-ray_.r); }
    GradedSeries<R> multiplier_y() const { return f_.pow_int(ray_.a); }

  private:
    void validate() const
    {
        if (!f_.coeff(0, 0).is_one())
            throw BadConstantTerm("generator function must have constant term 1");
        for (auto &[e, c] : f_.terms()) {
            if (e.first == 0 && e.second == 0)
                continue;
            long a = e.first, r = e.second;
            if (static_cast<long>(ray_.a) * r != static_cast<long>(ray_.r) * a ||
                (ray_.a > 0 && a % ray_.a) || (ray_.r > 0 && r % ray_.r) ||
                (ray_.a == 0 && a != 0) || (ray_.r == 0 && r != 0))
                throw NotInGroup("generator function term " +
                                 Ray{e.first, e.second}.str() + " off ray " + ray_.str());
        }
    }

    Ray ray_;
    GradedSeries<R> f_;
};

// T^{Omega}_{a,r} = theta_{(a,r), (1 - (-1)^{ar} x^a y^r)^Omega}.
template <CoeffRing R> VertexGenerator<R> make_T(Ray ray, const R &exponent, Cap cap)
{
    ray = make_ray(ray.a, ray.r);
    if (!cap.contains(ray.a, ray.r))
        throw OutOfCap("ray " + ray.str() + " outside " + cap.str());
    long sign = (static_cast<long>(ray.a) * ray.r % 2) ? -1 : 1; // (-1)^{ar}
    auto base = GradedSeries<R>::one(cap);
    base.add_to(ray.a, ray.r, R(-sign));
    return VertexGenerator<R>(ray, base.pow(exponent));
}

// Ordered word of generators. [g1, ..., gk] is the operator g1 o ... o gk:
// the rightmost generator acts first.
template <CoeffRing R> struct VertexWord {
    std::vector<VertexGenerator<R>> gens;

    static VertexWord identity() { return {}; }

    VertexWord inverse() const
    {
        VertexWord w;
        for (auto it = gens.rbegin(); it != gens.rend(); ++it)
            w.gens.push_back(it->inverse());
        return w;
    }

    friend VertexWord concat(const VertexWord &u, const VertexWord &v)
    {
        VertexWord w = u;
        w.gens.insert(w.gens.end(), v.gens.begin(), v.gens.end());
        return w;
    }
};

template <CoeffRing R>
GradedSeries<R> apply(const VertexWord<R> &w, GradedSeries<R> s)
{
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it)
        s = it->apply(s);
    return s;
}

// Multiplier pair (w(x)/x, w(y)/y), both series with constant term 1.
template <CoeffRing R> struct ActionMultipliers {
    GradedSeries<R> on_x;
    GradedSeries<R> on_y;
};

template <CoeffRing R>
ActionMultipliers<R> multipliers(const VertexWord<R> &w, Cap cap)
{
    // m(u o rest) = u(m(rest)) * m(u), folded from the innermost generator out.
    ActionMultipliers<R> m{GradedSeries<R>::one(cap), GradedSeries<R>::one(cap)};
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
        m.on_x = it->apply(m.on_x) * it->multiplier_x();
        m.on_y = it->apply(m.on_y) * it->multiplier_y();
    }
    return m;
}

// v^{-1} u^{-1} v u.
template <CoeffRing R>
VertexWord<R> commutator(const VertexWord<R> &u, const VertexWord<R> &v)
{
    return concat(concat(v.inverse(), u.inverse()), concat(v, u));
}

template <CoeffRing R>
VertexWord<R> commutator(const VertexGenerator<R> &u, const VertexGenerator<R> &v)
{
    return commutator(VertexWord<R>{{u}}, VertexWord<R>{{v}});
}

// Ordered product of ray automorphisms, one function per primitive ray,
// stored in the declared slope order.
template <CoeffRing R> struct Factorization {
    SlopeOrder order = SlopeOrder::desc;
    Cap cap = Cap::box(0, 0);
    std::vector<std::pair<Ray, GradedSeries<R>>> rays;

    const GradedSeries<R> *ray_function(Ray ray) const
    {
        for (auto &[q, f] : rays)
            if (q == ray)
                return &f;
        return nullptr;
    }

    friend bool operator==(const Factorization &a, const Factorization &b)
    {
        return a.order == b.order && a.cap == b.cap && a.rays == b.rays;
    }
};

template <CoeffRing R> VertexWord<R> recompose(const Factorization<R> &fact)
{
    VertexWord<R> w;
    for (auto &[ray, f] : fact.rays)
        w.gens.emplace_back(ray, f);
    return w;
}

inline std::vector<Ray> primitive_rays_in(const Cap &cap, SlopeOrder order)
{
    std::vector<Ray> rays;
    for (int a = 0; a <= cap.max_a(); ++a)
        for (int r = 0; r <= cap.max_r(); ++r)
            if ((a || r) && cap.contains(a, r) && std::gcd(a, r) == 1)
                rays.push_back({a, r});
    std::sort(rays.begin(), rays.end(),
              [order](Ray p, Ray q) { return slope_before(p, q, order); });
    return rays;
}

// Unique ordered-product expansion of a word, by increasing total degree: at
// each degree the discrepancy (current factors)^{-1} o w is read off the
// images of x and y, and the leading corrections are folded into the ray
// functions.
template <CoeffRing R>
Factorization<R> factorize(const VertexWord<R> &w, Cap cap, SlopeOrder order)
{
    auto target = multipliers(w, cap);
    std::map<Ray, GradedSeries<R>> fmap;
    auto current_word = [&]() {
        Factorization<R> cur;
        cur.order = order;
        cur.cap = cap;
        for (Ray ray : primitive_rays_in(cap, order)) {
            auto it = fmap.find(ray);
            if (it != fmap.end())
                cur.rays.emplace_back(ray, it->second);
        }
        return recompose(cur);
    };

    for (int k = 1; k <= cap.max_total(); ++k) {
        auto d = multipliers(concat(current_word().inverse(), w), cap);
        // Corrections on every ray with a > 0 are read off the y-image...
        for (auto &[e, c] : d.on_y.terms()) {
            auto [alpha, beta] = e;
            if (alpha + beta != k || (alpha == 0 && beta == 0))
                continue;
            if (alpha == 0)
                throw NotInGroup("y-image discrepancy on ray (0,1) at degree " +
                                 std::to_string(k));
            Ray dir = Ray{alpha, beta}.primitive();
            auto it = fmap.try_emplace(dir, GradedSeries<R>::one(cap)).first;
            it->second.add_to(alpha, beta, c * R::from_rational(Rational(1, dir.a)));
        }
        // ...and the (0,1) ray off the x-image, dividing by -1.
        for (auto &[e, c] : d.on_x.terms()) {
            auto [alpha, beta] = e;
            if (alpha + beta != k)
                continue;
            if (alpha == 0 && beta > 0) {
                auto it = fmap.try_emplace(Ray{0, 1}, GradedSeries<R>::one(cap)).first;
                it->second.add_to(0, beta, -c);
            }
            if (beta == 0 && alpha > 0)
                throw NotInGroup("x-image discrepancy on ray (1,0) at degree " +
                                 std::to_string(k));
        }
    }

    Factorization<R> out;
    out.order = order;
    out.cap = cap;
    for (Ray ray : primitive_rays_in(cap, order)) {
        auto it = fmap.find(ray);
        if (it != fmap.end() && !(it->second == GradedSeries<R>::one(cap)))
            out.rays.emplace_back(ray, it->second);
    }

    auto check = multipliers(recompose(out), cap);
    if (!(check.on_x == target.on_x) || !(check.on_y == target.on_y))
        throw NotInGroup("recomposed factorization does not reproduce the word");
    return out;
}

// Solves f_ray = prod_k (1 - (-1)^{k^2 a r} x^{ka} y^{kr})^{k Omega(ka,kr)}
// triangularly in k. Returns (k, Omega(ka,kr)) for every multiple within cap.
template <CoeffRing R>
std::vector<std::pair<int, R>> ray_function_to_BPS(Ray ray, const GradedSeries<R> &f_ray)
{
    if (!ray.is_primitive())
        throw IndexOutOfRange("BPS extraction needs a primitive ray " + ray.str());
    const Cap &cap = f_ray.cap();
    std::vector<std::pair<int, R>> out;
    GradedSeries<R> residual = f_ray;
    for (int m = 1; cap.contains(m * ray.a, m * ray.r); ++m) {
        long s = (static_cast<long>(m) * ray.a * ray.r % 2) ? -1 : 1; // (-1)^{m^2 a r}
        R c = residual.coeff(m * ray.a, m * ray.r);
        R omega = c * R::from_rational(Rational(-s, m));
        out.emplace_back(m, omega);
        if (!omega.is_zero()) {
            auto base = GradedSeries<R>::one(cap);
            base.add_to(m * ray.a, m * ray.r, R(-s));
            residual *= base.pow(R(static_cast<long>(-m)) * omega);
        }
    }
    if (!(residual == GradedSeries<R>::one(cap)))
        throw NotInGroup("ray function has support beyond the recognized multiples: " +
                         residual.str());
    return out;
}

// Formal statement of preservation of dx/x ^ dy/y:
// (dX/dx dY/dy - dX/dy dY/dx) * x * y == X * Y for X = theta(x), Y = theta(y).
template <CoeffRing R> bool symplectic_holds(const VertexGenerator<R> &gen, Cap cap)
{
    Cap ext = cap.grown(2, 2);
    VertexGenerator<R> g(gen.ray(), gen.f().cap() == ext ? gen.f()
                                                         : lift_to_cap(gen.f(), ext));
    auto X = g.apply(GradedSeries<R>::monomial(ext, 1, 0, R::one()));
    auto Y = g.apply(GradedSeries<R>::monomial(ext, 0, 1, R::one()));
    auto lhs = (X.partial(Var::x) * Y.partial(Var::y) - X.partial(Var::y) * Y.partial(Var::x)) *
               GradedSeries<R>::monomial(ext, 1, 1, R::one());
    auto rhs = X * Y;
    return lhs.recap(cap) == rhs.recap(cap);
}

// Re-embeds a series into a larger cap. Only valid when the source is exact
// there as well, e.g. ray functions of generators built at the smaller cap.
template <CoeffRing R> GradedSeries<R> lift_to_cap(const GradedSeries<R> &s, const Cap &big)
{
    if (!s.cap().subset_of(big))
        throw CapMismatch("lift target must contain the source cap");
    GradedSeries<R> r(big);
    for (auto &[e, c] : s.terms())
        r.set(e.first, e.second, c);
    return r;
}

} // namespace tropvert
