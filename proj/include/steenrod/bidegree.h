#pragma once

#include <compare>
#include <ostream>

namespace steenrod {

/* (topological degree, weight). Additive under composition and cup product. */
struct Bidegree {
    int t = 0;
    int w = 0;

    Bidegree operator+(const Bidegree& o) const { return {t + o.t, w + o.w}; }
    Bidegree operator-(const Bidegree& o) const { return {t - o.t, w - o.w}; }
    Bidegree& operator+=(const Bidegree& o)
    {
        t += o.t;
        w += o.w;
        return *this;
    }
    auto operator<=>(const Bidegree&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Bidegree& d)
{
    return os << "(" << d.t << "," << d.w << ")";
}

}  // namespace steenrod
