#pragma once

#include <compare>
#include <string>
#include <tuple>

#include "tropvert/errors.hpp"

namespace tropvert {

// Symbolic variable names: "chi", "u", "t", "s_<j>_<k>".
// The ordering (kind, j, k) is the fixed global variable order.
struct VarName {
    enum class Kind : int { chi = 0, u = 1, t = 2, s = 3 };

    Kind kind = Kind::chi;
    int j = 0;
    int k = 0;

    static VarName chi() { return {Kind::chi, 0, 0}; }
    static VarName u() { return {Kind::u, 0, 0}; }
    static VarName t() { return {Kind::t, 0, 0}; }
    static VarName s(int j, int k)
    {
        if (j < 1 || k < 1)
            throw IndexOutOfRange("s_j_k needs j,k >= 1");
        return {Kind::s, j, k};
    }

    friend auto operator<=>(const VarName &a, const VarName &b)
    {
        return std::tie(a.kind, a.j, a.k) <=> std::tie(b.kind, b.j, b.k);
    }
    friend bool operator==(const VarName &a, const VarName &b) = default;

    std::string str() const
    {
        switch (kind) {
        case Kind::chi: return "chi";
        case Kind::u: return "u";
        case Kind::t: return "t";
        case Kind::s: return "s_" + std::to_string(j) + "_" + std::to_string(k);
        }
        return "?";
    }

    static VarName parse(const std::string &s)
    {
        if (s == "chi")
            return chi();
        if (s == "u")
            return u();
        if (s == "t")
            return t();
        if (s.rfind("s_", 0) == 0) {
            auto mid = s.find('_', 2);
            if (mid != std::string::npos)
                return VarName::s(std::stoi(s.substr(2, mid - 2)), std::stoi(s.substr(mid + 1)));
        }
        throw Error("VarName: cannot parse '" + s + "'");
    }
};

} // namespace tropvert
