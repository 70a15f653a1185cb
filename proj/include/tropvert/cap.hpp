#pragma once

#include <algorithm>
#include <string>

#include "tropvert/errors.hpp"

namespace tropvert {

// Truncation region for (a,r) exponents. Both kinds keep a downward-closed set:
// if (a,r) is kept, so is every (a',r') with a' <= a, r' <= r.
struct Cap {
    enum class Kind { box, total };

    Kind kind = Kind::box;
    int a_max = 0;
    int r_max = 0;
    int n_max = 0;

    static Cap box(int a_max, int r_max)
    {
        if (a_max < 0 || r_max < 0)
            throw IndexOutOfRange("negative cap bound");
        Cap c;
        c.kind = Kind::box;
        c.a_max = a_max;
        c.r_max = r_max;
        return c;
    }

    static Cap total(int n_max)
    {
        if (n_max < 0)
            throw IndexOutOfRange("negative cap bound");
        Cap c;
        c.kind = Kind::total;
        c.n_max = n_max;
        return c;
    }

    bool contains(int a, int r) const
    {
        if (a < 0 || r < 0)
            return false;
        return kind == Kind::box ? (a <= a_max && r <= r_max) : (a + r <= n_max);
    }

    int max_total() const { return kind == Kind::box ? a_max + r_max : n_max; }
    int max_a() const { return kind == Kind::box ? a_max : n_max; }
    int max_r() const { return kind == Kind::box ? r_max : n_max; }

    bool subset_of(const Cap &o) const
    {
        for (int a = 0; a <= max_a(); ++a)
            for (int r = 0; r <= max_r(); ++r)
                if (contains(a, r) && !o.contains(a, r))
                    return false;
        return true;
    }

    // Cap grown by the given margins in each variable; used where an exact
    // intermediate needs one extra exponent (images x*f, symplectic check).
    Cap grown(int da, int dr) const
    {
        return kind == Kind::box ? box(a_max + da, r_max + dr) : total(n_max + std::max(da, dr));
    }

    friend bool operator==(const Cap &x, const Cap &y)
    {
        if (x.kind != y.kind)
            return false;
        return x.kind == Kind::box ? (x.a_max == y.a_max && x.r_max == y.r_max)
                                   : (x.n_max == y.n_max);
    }

    std::string str() const
    {
        return kind == Kind::box
                   ? "Box{" + std::to_string(a_max) + "," + std::to_string(r_max) + "}"
                   : "Total{" + std::to_string(n_max) + "}";
    }
};

inline void require_same_cap(const Cap &x, const Cap &y, const char *where)
{
    if (!(x == y))
        throw CapMismatch(std::string(where) + ": " + x.str() + " vs " + y.str());
}

} // namespace tropvert
