#pragma once

// Piecewise-linear bookkeeping for one real parameter t (a scalar
// magnitude).  Monomials are slope * t + off.

#include "sqf/scalar.hpp"

#include <optional>
#include <set>
#include <vector>

namespace sqf::detail {

struct Lin {
    int slope;
    Mag off;
    Mag at(const Mag& t) const { return Mag(slope) * t + off; }
};

using Bound = std::optional<Mag>;

inline bool inside(const Mag& t, const Bound& lo, const Bound& hi) {
    return (!lo || t >= *lo) && (!hi || t <= *hi);
}

inline Mag floor_mag(const Mag& m) {
    auto n = m.numerator(), d = m.denominator();
    auto q = n / d;
    if (n % d != 0 && n < 0) --q;
    return Mag(q);
}

inline Mag probe(const Bound& lo, const Bound& hi) {
    if (lo && hi) return (*lo + *hi) / 2;
    if (lo) return *lo + 1;
    if (hi) return *hi - 1;
    return 0;
}

inline void ties(const std::vector<Lin>& ms, const Bound& lo, const Bound& hi, std::set<Mag>& out) {
    for (std::size_t a = 0; a < ms.size(); ++a)
        for (std::size_t b = a + 1; b < ms.size(); ++b) {
            if (ms[a].slope == ms[b].slope) continue;
            Mag t = (ms[b].off - ms[a].off) / Mag(ms[a].slope - ms[b].slope);
            if (inside(t, lo, hi)) out.insert(t);
        }
}

template <class F>
void for_cells(const std::set<Mag>& pts, F&& fn) {
    Bound lo;
    for (auto it = pts.begin();; ++it) {
        Bound hi = it == pts.end() ? Bound{} : Bound{*it};
        fn(lo, hi);
        if (it == pts.end()) break;
        lo = *it;
    }
}

// The critical points themselves plus one point strictly inside every open
// cell, the unbounded cells included.  Discrete parameters keep integers only.
inline std::vector<Mag> sample_points(const std::set<Mag>& crit, bool discrete) {
    std::vector<Mag> ts;
    for (auto& t : crit)
        if (!discrete || t.denominator() == 1) ts.push_back(t);
    for_cells(crit, [&](const Bound& lo, const Bound& hi) {
        if (!discrete) {
            ts.push_back(probe(lo, hi));
            return;
        }
        Mag c = lo ? floor_mag(*lo) + 1 : (hi ? -floor_mag(-*hi) - 1 : Mag(0));
        if (!hi || c < *hi) ts.push_back(c);
    });
    std::sort(ts.begin(), ts.end());
    return ts;
}

} // namespace sqf::detail
