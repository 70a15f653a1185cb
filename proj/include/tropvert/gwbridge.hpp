#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tropvert/dtcore.hpp"
#include "tropvert/vertex.hpp"

namespace tropvert {

// A graded tuple of partitions: parts[g] holds the (positive) parts of the
// grade-(g+1) partition, each divisible by g+1; canonical form sorts parts
// within a grade descending.
struct GradedOrderedPartition {
    std::vector<std::vector<int>> parts_by_grade;

    int size() const
    {
        int s = 0;
        for (auto &grade : parts_by_grade)
            for (int v : grade)
                s += v;
        return s;
    }

    void canonicalize()
    {
        for (auto &grade : parts_by_grade)
            std::sort(grade.begin(), grade.end(), std::greater<int>());
        while (!parts_by_grade.empty() && parts_by_grade.back().empty())
            parts_by_grade.pop_back();
    }

    friend auto operator<=>(const GradedOrderedPartition &,
                            const GradedOrderedPartition &) = default;
};

// One extracted Gromov-Witten number: aggregate (no partition) or refined.
template <CoeffRing R> struct GWRecord {
    Ray ray;
    int h = 1;
    R value = R::zero();
    std::optional<GradedOrderedPartition> partition;
    long slot_multiplicity = 1; // labeled slot assignments collapsing to this partition
};

template <CoeffRing R> struct CommutatorResult {
    GradedSeries<R> f_ray;
    std::vector<std::pair<int, R>> omegas; // (h, Omega(ha, hr))
};

// Factorizes the commutator form of the wall-crossing identity,
// T_{0,1}^{-1} . theta_{(1,0),M(x)^chi} . T_{0,1} . theta_{(1,0),M(x)^{-chi}},
// and returns the ray function plus its BPS exponents for one primitive ray.
template <CoeffRing R>
CommutatorResult<R> commutator_pipeline(Ray ray, const R &chi, Cap cap)
{
    if (!ray.is_primitive() || ray.a < 1 || ray.r < 1)
        throw IndexOutOfRange("pipeline wants a primitive mixed ray, got " + ray.str());
    auto d0_inv = macmahon(MacmahonSign::plus, -chi, cap); // M(x)^{-chi}
    VertexWord<R> u, v;
    if (!(d0_inv == GradedSeries<R>::one(cap)))
        u.gens.emplace_back(Ray{1, 0}, d0_inv);
    v.gens.push_back(make_T(Ray{0, 1}, R::one(), cap));
    auto fact = factorize(commutator(u, v), cap, SlopeOrder::desc);
    const GradedSeries<R> *f = fact.ray_function(ray);
    GradedSeries<R> f_ray = f ? *f : GradedSeries<R>::one(cap);
    return {f_ray, ray_function_to_BPS(ray, f_ray)};
}

// Aggregate GW numbers: N_h = (-1)^{h(a+r)} [x^{ha} y^{hr}] log f / h.
template <CoeffRing R>
std::vector<GWRecord<R>> aggregate_gw(const GradedSeries<R> &f_ray, Ray ray)
{
    if (!ray.is_primitive())
        throw IndexOutOfRange("aggregate extraction wants a primitive ray");
    auto logf = f_ray.log();
    std::vector<GWRecord<R>> out;
    const Cap &cap = f_ray.cap();
    for (int h = 1; cap.contains(h * ray.a, h * ray.r); ++h) {
        long sgn = (static_cast<long>(h) * (ray.a + ray.r)) % 2 ? -1 : 1;
        R value = logf.coeff(h * ray.a, h * ray.r) * R::from_rational(Rational(sgn, h));
        out.push_back({ray, h, value, std::nullopt, 1});
    }
    return out;
}

// Both sides of the D0-D6/GW identity from two independent extractions of
// the same ray function: exp of the aggregate data on the left, the BPS
// product on the right. Both must reproduce f_ray exactly.
template <CoeffRing R> bool verify_gw_identity(Ray ray, const R &chi, int h_max, Cap cap)
{
    auto res = commutator_pipeline(ray, chi, cap);
    auto records = aggregate_gw(res.f_ray, ray);

    auto lhs = GradedSeries<R>::zero(cap);
    for (auto &rec : records) {
        if (rec.h > h_max)
            break;
        long sgn = (static_cast<long>(rec.h) * (ray.a + ray.r)) % 2 ? -1 : 1;
        lhs.add_to(rec.h * ray.a, rec.h * ray.r,
                   rec.value * R(static_cast<long>(rec.h) * sgn));
    }
    auto exp_side = lhs.exp();

    auto rhs = GradedSeries<R>::one(cap);
    for (auto &[h, omega] : res.omegas) {
        if (h > h_max || omega.is_zero())
            continue;
        long s = (static_cast<long>(h) * h * ray.a * ray.r) % 2 ? -1 : 1;
        auto base = GradedSeries<R>::one(cap);
        base.add_to(h * ray.a, h * ray.r, R(-s));
        rhs *= base.pow(R(static_cast<long>(h)) * omega);
    }

    // truncate the comparison to the multiples actually covered by h_max
    Cap window = Cap::total(std::min(cap.max_total(), h_max * (ray.a + ray.r)));
    return exp_side.recap(window) == rhs.recap(window) &&
           res.f_ray.recap(window) == rhs.recap(window);
}

template <CoeffRing R> struct RefinedResult {
    std::map<Ray, GradedSeries<R>> ray_functions;
    std::vector<GWRecord<R>> records;
};

// The multi-parameter commutator of the full formula: sigma carries one slot
// variable s_j_k per grade j <= d1 and slot k <= j*chi, tau carries t. For
// each primitive ray the monomials of log f decode uniquely into graded
// partitions (part p^j_k = j * exponent of s_j_k) with value h N[G].
inline RefinedResult<MultiPoly> refined_commutator(long chi, int d1, Cap cap)
{
    if (chi < 1)
        throw IndexOutOfRange("refined runs need a positive integer chi");
    if (d1 < 1 || d1 > cap.max_a())
        throw CapTooLarge("grade bound d1 must lie in 1.." + std::to_string(cap.max_a()));
    long slots = 0;
    for (int j = 1; j <= d1; ++j)
        slots += j * chi;
    if (slots > 24)
        throw CapTooLarge("refined run would carry " + std::to_string(slots) +
                          " slot variables");

    using S = GradedSeries<MultiPoly>;
    auto sigma = S::one(cap);
    for (int j = 1; j <= d1; ++j)
        for (int k = 1; k <= j * chi; ++k) {
            auto factor = S::one(cap);
            factor.add_to(j, 0, MultiPoly::variable(VarName::s(j, k)));
            sigma *= factor;
        }
    auto tau = S::one(cap);
    tau.add_to(0, 1, MultiPoly::variable(VarName::t()));

    VertexWord<MultiPoly> u{{VertexGenerator<MultiPoly>(Ray{1, 0}, sigma)}};
    VertexWord<MultiPoly> v{{VertexGenerator<MultiPoly>(Ray{0, 1}, tau)}};
    auto fact = factorize(commutator(u, v), cap, SlopeOrder::desc);

    RefinedResult<MultiPoly> out;
    for (auto &[ray, f] : fact.rays) {
        if (ray.a < 1 || ray.r < 1)
            continue;
        out.ray_functions.emplace(ray, f);
        auto logf = f.log();
        std::map<GradedOrderedPartition, std::pair<MultiPoly, long>> canon;
        for (int h = 1; cap.contains(h * ray.a, h * ray.r); ++h) {
            const MultiPoly &coeff = logf.coeff(h * ray.a, h * ray.r);
            for (auto &[mono, c] : coeff.terms()) {
                // decode: s_j_k exponent e contributes one part j*e in grade j
                GradedOrderedPartition g;
                g.parts_by_grade.assign(d1, {});
                int t_exp = 0, weighted = 0;
                for (auto &[var, e] : mono) {
                    if (var.kind == VarName::Kind::t) {
                        t_exp = e;
                        continue;
                    }
                    if (var.kind != VarName::Kind::s || var.j > d1 || var.k > var.j * chi)
                        throw NotInGroup("unexpected variable " + var.str() +
                                         " in refined log f");
                    g.parts_by_grade[var.j - 1].push_back(var.j * e);
                    weighted += var.j * e;
                }
                if (t_exp != h * ray.r || weighted != h * ray.a)
                    throw NotInGroup("monomial fails the grading checks of the display");
                g.canonicalize();
                auto [it, fresh] = canon.try_emplace(
                    g, std::make_pair(MultiPoly(c * Rational(1, h)), 1L));
                if (!fresh) {
                    if (!(it->second.first == MultiPoly(c * Rational(1, h))))
                        throw NotInGroup("slot symmetry violated during extraction");
                    it->second.second += 1;
                }
            }
            for (auto &[g, val] : canon) {
                GWRecord<MultiPoly> rec;
                rec.ray = ray;
                rec.h = h;
                rec.value = val.first;
                rec.partition = g;
                rec.slot_multiplicity = val.second;
                out.records.push_back(rec);
            }
            canon.clear();
        }
    }
    return out;
}

// D0-D6 specialization of the refined run: s_j_k -> -u^j, t -> -u (u = 1 in
// standard runs), then aggregates are read from the specialized function.
inline std::map<VarName, MultiPoly> d0d6_bindings(long chi, int d1, bool symbolic_u)
{
    std::map<VarName, MultiPoly> bind;
    MultiPoly u = symbolic_u ? MultiPoly::variable(VarName::u()) : MultiPoly(1);
    for (int j = 1; j <= d1; ++j)
        for (int k = 1; k <= j * chi; ++k)
            bind.emplace(VarName::s(j, k), -u.pow(j));
    bind.emplace(VarName::t(), -u);
    return bind;
}

inline GradedSeries<MultiPoly> specialize_series(const GradedSeries<MultiPoly> &s,
                                                 const std::map<VarName, MultiPoly> &bind)
{
    GradedSeries<MultiPoly> out(s.cap());
    for (auto &[e, c] : s.terms())
        out.add_to(e.first, e.second, c.substitute(bind));
    return out;
}

// Specializes every refined ray function and re-extracts aggregates.
inline std::map<Ray, std::vector<GWRecord<MultiPoly>>>
specialize_to_d0d6(const RefinedResult<MultiPoly> &refined, long chi, int d1,
                   bool symbolic_u = false)
{
    auto bind = d0d6_bindings(chi, d1, symbolic_u);
    std::map<Ray, std::vector<GWRecord<MultiPoly>>> out;
    for (auto &[ray, f] : refined.ray_functions)
        out.emplace(ray, aggregate_gw(specialize_series(f, bind), ray));
    return out;
}

} // namespace tropvert
