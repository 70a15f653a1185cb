#pragma once

#include <cstdint>
#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "tropvert/dtcore.hpp"
#include "tropvert/gwbridge.hpp"

namespace tropvert {

using nlohmann::json;

inline constexpr const char *artifact_version = "0.1.0";

// ---- ring values ---------------------------------------------------------

inline json to_json(const Rational &q) { return q.str(); }

inline json to_json(const MultiPoly &p)
{
    json terms = json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        json vars = json::object();
        for (auto &[v, e] : it->first)
            vars[v.str()] = e;
        terms.push_back({{"coeff", it->second.str()}, {"vars", vars}});
    }
    return terms;
}

inline Rational rational_from_json(const json &j) { return Rational::parse(j.get<std::string>()); }

inline MultiPoly multipoly_from_json(const json &j)
{
    if (j.is_string())
        return MultiPoly(rational_from_json(j));
    MultiPoly p;
    for (auto &term : j) {
        MultiPoly t(Rational::parse(term.at("coeff").get<std::string>()));
        for (auto &[name, exp] : term.at("vars").items())
            t *= MultiPoly::variable(VarName::parse(name), exp.get<int>());
        p += t;
    }
    return p;
}

// ---- caps and series -----------------------------------------------------

inline json to_json(const Cap &cap)
{
    if (cap.kind == Cap::Kind::box)
        return {{"kind", "box"}, {"a_max", cap.a_max}, {"r_max", cap.r_max}};
    return {{"kind", "total"}, {"n_max", cap.n_max}};
}

inline Cap cap_from_json(const json &j)
{
    if (j.at("kind") == "box")
        return Cap::box(j.at("a_max").get<int>(), j.at("r_max").get<int>());
    return Cap::total(j.at("n_max").get<int>());
}

template <CoeffRing R> json to_json(const GradedSeries<R> &s)
{
    json terms = json::array();
    for (auto &[e, c] : s.terms())
        terms.push_back({{"a", e.first}, {"r", e.second}, {"coeff", to_json(c)}});
    return {{"cap", to_json(s.cap())}, {"terms", terms}};
}

template <CoeffRing R> json to_json(const Factorization<R> &f)
{
    json rays = json::array();
    for (auto &[ray, fn] : f.rays) {
        json f_terms = json::array();
        for (auto &[e, c] : fn.terms())
            f_terms.push_back({{"a", e.first}, {"r", e.second}, {"coeff", to_json(c)}});
        rays.push_back({{"a", ray.a}, {"r", ray.r}, {"f_terms", f_terms}});
    }
    return {{"order", f.order == SlopeOrder::desc ? "desc" : "asc"}, {"rays", rays}};
}

// ---- invariant tables ----------------------------------------------------

template <CoeffRing R> json to_json(const InvariantTable<R> &t)
{
    json entries = json::array();
    for (auto &[cls, entry] : t.entries)
        entries.push_back({{"a", cls.first},
                           {"r", cls.second},
                           {"omega", to_json(entry.omega)},
                           {"dtbar", to_json(entry.dtbar)}});
    return {{"chi", to_json(t.chi)},
            {"cap", to_json(t.cap)},
            {"method", method_name(t.method)},
            {"entries", entries}};
}

// ---- GW records ----------------------------------------------------------

inline json to_json(const GradedOrderedPartition &g)
{
    json out = json::object();
    for (size_t grade = 0; grade < g.parts_by_grade.size(); ++grade)
        if (!g.parts_by_grade[grade].empty())
            out[std::to_string(grade + 1)] = g.parts_by_grade[grade];
    return out;
}

template <CoeffRing R> json to_json(Ray ray, const std::vector<GWRecord<R>> &records)
{
    json recs = json::array();
    for (auto &rec : records) {
        json r = {{"h", rec.h}, {"value", to_json(rec.value)}};
        if (rec.partition) {
            r["partition"] = to_json(*rec.partition);
            r["slot_multiplicity"] = rec.slot_multiplicity;
        }
        recs.push_back(r);
    }
    return {{"ray", {{"a", ray.a}, {"r", ray.r}}}, {"records", recs}};
}

// ---- config hashing and atomic output ------------------------------------

inline std::string canonical_dump(const json &j) { return j.dump(); } // sorted keys

inline std::string config_hash(const json &config)
{
    // FNV-1a, 64 bit; stable across platforms for cache keys
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical_dump(config)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline void atomic_write(const std::filesystem::path &path, const std::string &content)
{
    auto dir = path.parent_path();
    if (!dir.empty())
        std::filesystem::create_directories(dir);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

} // namespace tropvert
