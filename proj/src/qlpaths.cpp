#include "sqf/qlpaths.hpp"
#include "sqf/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace sqf {

namespace {

std::size_t length(const Path& p) { return p.empty() ? 0 : p.size() - 1; }

void require_indices(const Universe& U, const Path& p) {
    if (p.empty()) throw PreconditionError("empty path");
    for (auto i : p)
        if (i >= U.size()) throw PreconditionError("path index out of range");
}

void require_direct(const Universe& U, const Path& p) {
    if (!is_direct(U, p)) throw PreconditionError("path " + to_string(U, p) + " is not direct");
}

// Lexicographically least ray of a nonempty set.
std::size_t least(const Universe& U, const RaySet& s) {
    auto it = s.find_first();
    std::size_t best = it;
    for (; it != RaySet::npos; it = s.find_next(it))
        if (U.ray(it) < U.ray(best)) best = it;
    return best;
}

std::vector<std::size_t> by_ray_order(const Universe& U, const RaySet& s) {
    auto v = members(s);
    std::sort(v.begin(), v.end(), [&](auto a, auto b) { return U.ray(a) < U.ray(b); });
    return v;
}

RaySet path_set(const Universe& U, const Path& p) { return U.set_of(p); }

Path reversed(Path p) {
    std::reverse(p.begin(), p.end());
    return p;
}

} // namespace

// ---- graph ----------------------------------------------------------------

QlGraph build_ql_graph(const Universe& U) {
    QlGraph g;
    g.vertices = U.size();
    for (std::size_t i = 0; i < U.size(); ++i) {
        if (U.adjacent(i, i)) g.loops.push_back(i);
        for (std::size_t j = i + 1; j < U.size(); ++j)
            if (U.adjacent(i, j)) g.edges.emplace_back(i, j);
    }
    return g;
}

QlGraph decorate(const Universe& U) {
    QlGraph g = build_ql_graph(U);
    for (auto [i, j] : g.edges) {
        bool ij = U.preceq(i, j), ji = U.preceq(j, i);
        if (ij && ji)
            g.equivalent.emplace_back(i, j);
        else if (ij)
            g.arrows.emplace_back(i, j);
        else if (ji)
            g.arrows.emplace_back(j, i);
    }
    return g;
}

std::string graph_to_dot(const Universe& U, const QlGraph& g) {
    std::ostringstream os;
    os << "digraph ql {\n";
    for (std::size_t i = 0; i < g.vertices; ++i) os << "  v" << i << " [label=\"" << to_string(U.ray(i)) << "\"];\n";
    auto has = [](const auto& v, std::pair<std::size_t, std::size_t> e) {
        return std::find(v.begin(), v.end(), e) != v.end();
    };
    for (auto i : g.loops) os << "  v" << i << " -> v" << i << " [dir=none];\n";
    for (auto [i, j] : g.edges) {
        if (has(g.equivalent, {i, j}))
            os << "  v" << i << " -> v" << j << " [dir=both];\n";
        else if (has(g.arrows, {i, j}))
            os << "  v" << i << " -> v" << j << ";\n";
        else if (has(g.arrows, {j, i}))
            os << "  v" << j << " -> v" << i << ";\n";
        else
            os << "  v" << i << " -> v" << j << " [dir=none];\n";
    }
    os << "}\n";
    return os.str();
}

nlohmann::json graph_to_json(const Universe& U, const QlGraph& g) {
    nlohmann::json j;
    auto vs = nlohmann::json::array();
    for (std::size_t i = 0; i < g.vertices; ++i) vs.push_back(to_string(U.ray(i)));
    j["vertices"] = vs;
    j["edges"] = g.edges;
    j["loops"] = g.loops;
    j["arrows"] = g.arrows;
    j["equivalent"] = g.equivalent;
    return j;
}

// ---- paths and reductions -------------------------------------------------

bool is_path(const Universe& U, const Path& p) {
    if (p.empty()) return false;
    for (auto i : p)
        if (i >= U.size()) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!U.adjacent(p[i], p[i + 1])) return false;
    return true;
}

bool is_direct(const Universe& U, const Path& p) {
    if (!is_path(U, p) || p.front() == p.back()) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 2; j < p.size(); ++j)
            if (U.adjacent(p[i], p[j])) return false;
    return true;
}

std::optional<Path> basic_reduction(const Universe& U, const Path& p, std::size_t i, Dir d) {
    require_indices(U, p);
    std::size_t n = length(p);
    if (i > n) throw PreconditionError("position out of range");
    if (d == Dir::forward) {
        for (std::size_t s = n; s > i + 1; --s)
            if (U.adjacent(p[i], p[s])) {
                Path out(p.begin(), p.begin() + i + 1);
                out.insert(out.end(), p.begin() + s, p.end());
                return out;
            }
    } else {
        for (std::size_t r = 0; r + 1 < i; ++r)
            if (U.adjacent(p[r], p[i])) {
                Path out(p.begin(), p.begin() + r + 1);
                out.insert(out.end(), p.begin() + i, p.end());
                return out;
            }
    }
    return std::nullopt;
}

bool is_bridge(const Universe& U, const Path& over, const Bridge& b) {
    std::size_t n = length(over), m = b.support.size();
    if (b.path.size() != m + 2 || !is_path(U, b.path)) return false;
    if (b.path.front() != over.front() || b.path.back() != over.back()) return false;
    for (std::size_t r = 0; r < m; ++r) {
        if (b.support[r] > n || (r > 0 && b.support[r] <= b.support[r - 1])) return false;
        if (!U.preceq(over[b.support[r]], b.path[r + 1])) return false;
    }
    if (m >= 2 && b.support[0] == 0 && b.support[1] < 2) return false;
    if (m >= 2 && b.support[m - 1] == n && b.support[m - 2] + 2 > n) return false;
    return true;
}

std::optional<std::vector<std::size_t>> bridge_support(const Universe& U, const Path& over, const Path& path) {
    if (path.size() < 2) return std::nullopt;
    std::size_t m = path.size() - 2, n = length(over);
    std::vector<std::size_t> c(m);
    std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t r, std::size_t from) {
        if (r == m) return is_bridge(U, over, {path, c});
        for (std::size_t k = from; k <= n; ++k)
            if (U.preceq(over[k], path[r + 1])) {
                c[r] = k;
                if (go(r + 1, k + 1)) return true;
            }
        return false;
    };
    if (go(0, 0)) return c;
    return std::nullopt;
}

std::optional<Reduction> elementary_reduction(const Universe& U, const Path& p, std::size_t i, std::size_t y,
                                              Dir d) {
    require_indices(U, p);
    std::size_t n = length(p);
    if (i > n) throw PreconditionError("position out of range");
    if (y >= U.size() || !U.preceq(p[i], y)) throw PreconditionError("ray is not in the saturation of X_i");
    if (p.front() == p.back()) throw PreconditionError("elementary reduction needs X0 != Xn");
    const RaySet& star = U.star(y);
    Reduction red;
    auto identity_support = [](std::size_t from, std::size_t to, std::vector<std::size_t>& out) {
        for (std::size_t k = from; k < to; ++k) out.push_back(k);
    };
    if (d == Dir::forward) {
        std::size_t s = n + 1;
        for (std::size_t k = n; k > i + 1; --k)
            if (star[p[k]]) {
                s = k;
                break;
            }
        if (s == n + 1 || (i == 0 && s <= 2)) return std::nullopt;
        if (i == 0) {
            red.path = {p[0], y};
            red.bridge.support = {0};
        } else {
            red.path.assign(p.begin(), p.begin() + i);
            red.path.push_back(y);
            identity_support(1, i, red.bridge.support);
            red.bridge.support.push_back(i);
        }
        red.path.insert(red.path.end(), p.begin() + s, p.end());
        identity_support(s, n, red.bridge.support);
    } else {
        std::size_t r = n + 1;
        for (std::size_t k = 0; k + 1 < i; ++k)
            if (star[p[k]]) {
                r = k;
                break;
            }
        if (r == n + 1 || (i == n && r + 2 >= n)) return std::nullopt;
        red.path.assign(p.begin(), p.begin() + r + 1);
        red.path.push_back(y);
        identity_support(1, r + 1, red.bridge.support);
        red.bridge.support.push_back(i);
        if (i == n) {
            red.path.push_back(p[n]);
        } else {
            red.path.insert(red.path.end(), p.begin() + i + 1, p.end());
            identity_support(i + 1, n, red.bridge.support);
        }
    }
    red.bridge.path = red.path;
    return red;
}

std::vector<ReduceStep> reduce(const Universe& U, const Path& p, ReduceMode mode) {
    require_indices(U, p);
    if (!is_path(U, p)) throw PreconditionError("not a QL-path");
    if (mode == ReduceMode::elementary && p.front() == p.back())
        throw PreconditionError("elementary reduction needs X0 != Xn");
    std::vector<ReduceStep> trace;
    Path cur = p;
    for (;;) {
        std::optional<ReduceStep> step;
        for (std::size_t i = 0; i < cur.size() && !step; ++i)
            for (Dir d : {Dir::forward, Dir::backward}) {
                if (mode == ReduceMode::basic) {
                    if (auto r = basic_reduction(U, cur, i, d)) step = ReduceStep{i, cur[i], d, cur, *r, std::nullopt};
                } else {
                    for (auto y : by_ray_order(U, up(U, cur[i])))
                        if (auto r = elementary_reduction(U, cur, i, y, d)) {
                            step = ReduceStep{i, y, d, cur, r->path, r->bridge};
                            break;
                        }
                }
                if (step) break;
            }
        if (!step) return trace;
        cur = step->after;
        trace.push_back(std::move(*step));
    }
}

RaySet widehat_ql(const Universe& U, std::size_t x) {
    RaySet out = U.empty();
    for (auto y : members(up(U, x))) out |= U.star(y);
    return out;
}

bool admits_elementary_reduction(const Universe& U, const Path& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        for (auto y : members(up(U, p[i])))
            for (Dir d : {Dir::forward, Dir::backward})
                if (elementary_reduction(U, p, i, y, d)) return true;
    return false;
}

bool is_optimal(const Universe& U, const Path& p) {
    require_indices(U, p);
    std::size_t n = length(p);
    if (n < 3) throw PreconditionError("optimality needs length n >= 3");
    if (p.front() == p.back()) throw PreconditionError("optimality needs X0 != Xn");
    if (!is_path(U, p)) return false;
    for (std::size_t i = 0; i <= n; ++i) {
        std::size_t lo = i == 0 ? 0 : (i == n ? n - 2 : i - 1);
        std::size_t hi = i == 0 ? 2 : (i == n ? n : i + 1);
        RaySet w = widehat_ql(U, p[i]);
        for (std::size_t j = 0; j <= n; ++j)
            if ((j < lo || j > hi) && w[p[j]]) return false;
    }
    return true;
}

bool is_enlargement_of(const Universe& U, const Path& y, const Path& x) {
    if (y.size() != x.size()) throw PreconditionError("paths of different length");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!U.preceq(x[i], y[i])) return false;
    return true;
}

bool dominates(const Universe& U, const Path& y, const Path& x) { return is_enlargement_of(U, y, x); }

std::vector<std::optional<std::size_t>> distances(const Universe& U, std::size_t from) {
    std::vector<std::optional<std::size_t>> d(U.size());
    std::deque<std::size_t> q{from};
    d[from] = 0;
    while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        for (auto w : members(U.star(v)))
            if (!d[w]) {
                d[w] = *d[v] + 1;
                q.push_back(w);
            }
    }
    return d;
}

std::optional<Path> minimal_path(const Universe& U, std::size_t from, std::size_t to) {
    if (from >= U.size() || to >= U.size()) throw PreconditionError("ray index out of range");
    // Distances to the target, then walk forward taking the least ray that stays on a geodesic.
    auto d = distances(U, to);
    if (!d[from]) return std::nullopt;
    Path p{from};
    while (p.back() != to) {
        auto v = p.back();
        for (auto w : by_ray_order(U, U.star(v)))
            if (d[w] && *d[w] + 1 == *d[v]) {
                p.push_back(w);
                break;
            }
    }
    return p;
}

bool is_minimal(const Universe& U, const Path& p) {
    if (!is_path(U, p)) return false;
    auto d = distances(U, p.front());
    return d[p.back()] && *d[p.back()] == length(p);
}

// ---- order cones ----------------------------------------------------------

RaySet up(const Universe& U, std::size_t x) {
    RaySet s = U.empty();
    for (std::size_t j = 0; j < U.size(); ++j)
        if (U.preceq(x, j)) s.set(j);
    return s;
}

RaySet down(const Universe& U, std::size_t x) {
    RaySet s = U.empty();
    for (std::size_t j = 0; j < U.size(); ++j)
        if (U.preceq(j, x)) s.set(j);
    return s;
}

RaySet upset(const Universe& U, const RaySet& s) {
    RaySet out = U.empty();
    for (auto x : members(s)) out |= up(U, x);
    return out;
}

RaySet downset(const Universe& U, const RaySet& s) {
    RaySet out = U.empty();
    for (auto x : members(s)) out |= down(U, x);
    return out;
}

// ---- twins and anchors ----------------------------------------------------

TwinAnnotation twins_and_singles(const Universe& U, const Path& p) {
    require_direct(U, p);
    std::size_t n = length(p);
    TwinAnnotation a;
    a.twin_pair.assign(n, false);
    a.single.assign(n + 1, true);
    for (std::size_t i = 0; i < n; ++i)
        if ((down(U, p[i]) & down(U, p[i + 1])).any()) {
            a.twin_pair[i] = true;
            a.single[i] = a.single[i + 1] = false;
        }
    // An upset meets a direct path in at most two adjacent rays.
    RaySet on = path_set(U, p);
    for (std::size_t y = 0; y < U.size(); ++y) {
        auto hit = members(up(U, y) & on);
        if (hit.size() > 2) throw std::logic_error("upset meets a direct path in more than two rays");
    }
    return a;
}

AnchorLayout anchor_layout(const std::vector<bool>& twin) {
    std::size_t n = twin.size();
    AnchorLayout L;
    L.legal.assign(n + 1, 0);
    L.illegal.assign(n + 1, std::nullopt);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (twin[i] && (i == 0 || !twin[i - 1])) {
            L.legal[i + 1] = k;
        } else if (twin[i]) {
            L.illegal[i] = ++k;
            L.legal[i + 1] = k;
        } else {
            L.legal[i + 1] = ++k;
        }
    }
    L.count = k + 1;
    return L;
}

namespace {

// Rays admissible for each anchor slot: the common downset of the positions it serves.
std::vector<RaySet> slot_candidates(const Universe& U, const Path& p, const AnchorLayout& L) {
    std::vector<RaySet> c(L.count, U.full());
    for (std::size_t i = 0; i < p.size(); ++i) {
        RaySet d = down(U, p[i]);
        c[L.legal[i]] &= d;
        if (L.illegal[i]) c[*L.illegal[i]] &= d;
    }
    return c;
}

} // namespace

AnchorSet anchor_set(const Universe& U, const Path& p, Strategy s) {
    auto tw = twins_and_singles(U, p);
    AnchorLayout L = anchor_layout(tw.twin_pair);
    auto cand = slot_candidates(U, p, L);
    AnchorSet S;
    S.legal = L.legal;
    S.illegal = L.illegal;
    S.twin_pair = tw.twin_pair;
    S.anchors.assign(L.count, 0);
    for (std::size_t k = 0; k < L.count; ++k) {
        if (cand[k].none()) throw std::logic_error("empty anchor candidates");
        S.anchors[k] = least(U, cand[k]);
    }
    if (s == Strategy::special)
        for (std::size_t i = 0; i < p.size(); ++i)
            if (tw.single[i]) S.anchors[L.legal[i]] = p[i];
    return S;
}

AnchorSet rebase(const Universe& U, const Path& p, const std::vector<std::size_t>& anchors) {
    auto tw = twins_and_singles(U, p);
    AnchorLayout L = anchor_layout(tw.twin_pair);
    if (anchors.size() != L.count)
        throw PreconditionError("anchor count " + std::to_string(anchors.size()) + " does not match " +
                                std::to_string(L.count));
    auto cand = slot_candidates(U, p, L);
    for (std::size_t k = 0; k < L.count; ++k)
        if (anchors[k] >= U.size() || !cand[k][anchors[k]])
            throw PreconditionError("anchor " + std::to_string(k) + " is not admissible");
    return {anchors, L.legal, L.illegal, tw.twin_pair};
}

bool is_anchor_set(const Universe& U, const Path& p, const std::vector<std::size_t>& anchors) {
    try {
        rebase(U, p, anchors);
        return true;
    } catch (const PreconditionError&) {
        return false;
    }
}

bool is_sql_pair(const Universe& U, std::size_t y1, std::size_t y2) {
    RaySet u2 = up(U, y2);
    for (auto x1 : members(up(U, y1)))
        if ((U.star(x1) & u2).any()) return true;
    return false;
}

bool is_direct_sql_sequence(const Universe& U, const std::vector<std::size_t>& seq) {
    if (seq.size() < 2) return false;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!is_sql_pair(U, seq[i], seq[i + 1])) return false;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 2; j < seq.size(); ++j)
            if (U.adjacent(seq[i], seq[j])) return false;
    return true;
}

// ---- flocks and tracks ----------------------------------------------------

FlockPartition flocks(const Universe& U, const Path& p, const AnchorSet& S) {
    auto tw = twins_and_singles(U, p);
    if (tw.twin_pair != S.twin_pair) throw PreconditionError("anchor set belongs to a different twin pattern");
    FlockPartition f;
    std::size_t n = length(p);
    for (std::size_t i = 0; i < n;) {
        if (!tw.twin_pair[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && tw.twin_pair[j]) ++j;
        if (j - i >= 2)
            f.flocks.emplace_back(i, j);
        else
            f.isolated.push_back(i);
        i = j;
    }
    for (std::size_t i = 0; i <= n; ++i)
        if (tw.single[i]) f.singles.push_back(i);
    return f;
}

namespace {

std::vector<bool> track_links(const Universe& U, const AnchorSet& S) {
    std::vector<bool> link(S.m(), false);
    for (std::size_t k = 0; k < S.m(); ++k) link[k] = (up(U, S.anchors[k]) & up(U, S.anchors[k + 1])).any();
    return link;
}

} // namespace

TrackPartition tracks(const Universe& U, const AnchorSet& S) {
    auto link = track_links(U, S);
    TrackPartition T;
    std::vector<bool> covered(S.anchors.size(), false);
    for (std::size_t k = 0; k < link.size();) {
        if (!link[k]) {
            ++k;
            continue;
        }
        std::size_t j = k;
        while (j < link.size() && link[j]) ++j;
        T.tracks.push_back({k, j - k - 1});
        for (std::size_t a = k; a <= j; ++a) covered[a] = true;
        k = j;
    }
    for (std::size_t a = 0; a < covered.size();) {
        if (covered[a]) {
            ++a;
            continue;
        }
        std::size_t b = a;
        while (b + 1 < covered.size() && !covered[b + 1]) ++b;
        T.trackless.emplace_back(a, b);
        a = b + 1;
    }
    return T;
}

bool is_flocky(const Universe& U, const Path& p, const AnchorSet& S) {
    RaySet on = path_set(U, p);
    auto link = track_links(U, S);
    for (std::size_t k = 0; k < link.size(); ++k)
        if (link[k] && !(up(U, S.anchors[k]) & up(U, S.anchors[k + 1]) & on).any()) return false;
    return true;
}

Path flock_modification(const Universe& U, const Path& p, const AnchorSet& S, const Track& tr,
                        const std::vector<std::size_t>& choices) {
    if (!is_minimal(U, p)) throw PreconditionError("flock modification needs a minimal path");
    AnchorSet cur = rebase(U, p, S.anchors);
    auto T = tracks(U, cur);
    if (std::find(T.tracks.begin(), T.tracks.end(), tr) == T.tracks.end())
        throw PreconditionError("not a maximal track of the anchor set");
    std::vector<std::size_t> W;
    for (std::size_t i = 0; i <= tr.t; ++i) {
        RaySet both = up(U, S.anchors[tr.k + i]) & up(U, S.anchors[tr.k + i + 1]);
        if (choices.empty()) {
            W.push_back(least(U, both));
        } else {
            if (choices.size() != tr.t + 1) throw PreconditionError("one choice per track step is needed");
            if (choices[i] >= U.size() || !both[choices[i]])
                throw PreconditionError("choice " + std::to_string(i) + " is not in the upset intersection");
            W.push_back(choices[i]);
        }
    }
    auto anchored_at = [&](std::size_t i, std::size_t k) {
        return cur.legal[i] == k || (cur.illegal[i] && *cur.illegal[i] == k);
    };
    std::size_t n = length(p);
    for (std::size_t s = 0; s + tr.t + 2 <= n; ++s) {
        std::size_t r = s + tr.t + 2;
        if (!anchored_at(s, tr.k) || !anchored_at(r, tr.k + tr.t + 1)) continue;
        Path out(p.begin(), p.begin() + s + 1);
        out.insert(out.end(), W.begin(), W.end());
        out.insert(out.end(), p.begin() + r, p.end());
        return out;
    }
    throw PreconditionError("track (" + std::to_string(tr.k) + ", " + std::to_string(tr.t) +
                            ") has no length-preserving splice");
}

Path total_flock_modification(const Universe& U, const Path& p, const AnchorSet& S) {
    Path cur = p;
    for (auto& tr : tracks(U, S).tracks) cur = flock_modification(U, cur, rebase(U, cur, S.anchors), tr);
    return cur;
}

// ---- anchor diagrams ------------------------------------------------------

AnchorDiagram anchor_diagram(const Universe& U, const Path& p, const AnchorSet& S) {
    AnchorDiagram d;
    std::vector<std::pair<std::string, std::size_t>> nodes;
    for (std::size_t i = 0; i < p.size(); ++i) {
        d.upper.push_back(to_string(U.ray(p[i])));
        nodes.emplace_back("x" + std::to_string(i), p[i]);
    }
    for (std::size_t k = 0; k < S.anchors.size(); ++k) {
        d.lower.push_back(to_string(U.ray(S.anchors[k])));
        nodes.emplace_back("y" + std::to_string(k), S.anchors[k]);
    }
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            auto [na, ia] = nodes[a];
            auto [nb, ib] = nodes[b];
            if (!U.adjacent(ia, ib)) continue;
            bool ab = U.preceq(ia, ib), ba = U.preceq(ib, ia);
            if (ab && ba)
                d.edges.push_back({na, nb, DiagramEdge::equivalent});
            else if (ab)
                d.edges.push_back({na, nb, DiagramEdge::arrow});
            else if (ba)
                d.edges.push_back({nb, na, DiagramEdge::arrow});
            else
                d.edges.push_back({na, nb, DiagramEdge::edge});
        }
    return d;
}

std::string diagram_to_dot(const AnchorDiagram& d) {
    std::ostringstream os;
    os << "digraph anchors {\n  rankdir=TB;\n  { rank=same;";
    for (std::size_t i = 0; i < d.upper.size(); ++i) os << " x" << i;
    os << " }\n  { rank=same;";
    for (std::size_t k = 0; k < d.lower.size(); ++k) os << " y" << k;
    os << " }\n";
    for (std::size_t i = 0; i < d.upper.size(); ++i) os << "  x" << i << " [label=\"" << d.upper[i] << "\"];\n";
    for (std::size_t k = 0; k < d.lower.size(); ++k) os << "  y" << k << " [label=\"" << d.lower[k] << "\"];\n";
    for (std::size_t i = 0; i + 1 < d.upper.size(); ++i)
        os << "  x" << i << " -> x" << i + 1 << " [style=invis];\n";
    for (auto& e : d.edges) {
        os << "  " << e.a << " -> " << e.b;
        bool cross = e.a[0] != e.b[0];
        switch (e.kind) {
        case DiagramEdge::edge: os << " [dir=none" << (cross ? ", constraint=true" : "") << "]"; break;
        case DiagramEdge::arrow: os << (cross ? " [constraint=true]" : ""); break;
        case DiagramEdge::equivalent: os << " [dir=both]"; break;
        }
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

nlohmann::json diagram_to_json(const AnchorDiagram& d) {
    nlohmann::json j;
    j["upper"] = d.upper;
    j["lower"] = d.lower;
    auto es = nlohmann::json::array();
    static const char* names[] = {"edge", "arrow", "equivalent"};
    for (auto& e : d.edges) es.push_back({{"from", e.a}, {"to", e.b}, {"kind", names[e.kind]}});
    j["edges"] = es;
    return j;
}

AnchorDiagram diagram_from_json(const nlohmann::json& j) {
    try {
        AnchorDiagram d;
        d.upper = j.at("upper").get<std::vector<std::string>>();
        d.lower = j.at("lower").get<std::vector<std::string>>();
        for (auto& e : j.at("edges")) {
            auto kind = e.at("kind").get<std::string>();
            DiagramEdge::Kind k = kind == "edge"    ? DiagramEdge::edge
                                  : kind == "arrow" ? DiagramEdge::arrow
                                  : kind == "equivalent"
                                      ? DiagramEdge::equivalent
                                      : throw ParseError("unknown edge kind '" + kind + "'");
            d.edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(), k});
        }
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("anchor diagram: ") + e.what());
    }
}

QlBlocks ql_blocks(const Universe& U, const Path& p, const AnchorSet& S) {
    QlBlocks out;
    auto tw = twins_and_singles(U, p);
    std::size_t m = S.m();
    for (std::size_t k = 0; k < m;) {
        if (!U.adjacent(S.anchors[k], S.anchors[k + 1])) {
            ++k;
            continue;
        }
        std::size_t j = k;
        while (j < m && U.adjacent(S.anchors[j], S.anchors[j + 1])) ++j;
        QlBlock b{k, j - k, std::nullopt};
        for (std::size_t q = 0; q < p.size(); ++q) {
            if (S.legal[q] != k || !tw.single[q] || q + b.t >= p.size()) continue;
            bool ok = true;
            for (std::size_t r = 0; r <= b.t && ok; ++r) ok = tw.single[q + r] && S.legal[q + r] == k + r;
            if (ok) b.p = q;
        }
        out.blocks.push_back(b);
        k = j;
    }
    for (std::size_t q = 0; q + 1 < p.size(); ++q) {
        if (!tw.twin_pair[q]) continue;
        std::size_t a = S.legal[q + 1];
        bool bad = (a > 0 && U.adjacent(S.anchors[a - 1], S.anchors[a])) ||
                   (a < m && U.adjacent(S.anchors[a], S.anchors[a + 1]));
        if (bad) out.twin_anchor_edges.push_back(a);
    }
    return out;
}

// ---- entrance and exit ----------------------------------------------------

namespace {

void require_entrance_shape(const Universe& U, const Path& p) {
    require_direct(U, p);
    if (length(p) < 2) throw PreconditionError("entrance and exit need length n >= 2");
}

bool narrow_entrance(const Universe& U, const Path& p) {
    for (auto y : members(up(U, p[0])))
        if (U.adjacent(y, p[2])) return false;
    return true;
}

bool narrow_exit(const Universe& U, const Path& p) {
    std::size_t n = length(p);
    RaySet on = path_set(U, p), want = U.set_of({p[n - 1], p[n]});
    for (auto y : members(up(U, p[n])))
        if ((U.star(y) & on) != want) return false;
    return true;
}

Modification splice_start(const Universe& U, const Path& p, std::size_t y, bool exit) {
    Modification m;
    m.path = p;
    m.path[1] = y;
    if (!is_direct(U, m.path)) return m;
    auto tw = twins_and_singles(U, m.path);
    m.twin = tw.twin_pair[0];
    m.minimal = is_minimal(U, m.path);
    m.narrow = exit ? narrow_exit(U, reversed(m.path)) : narrow_entrance(U, m.path);
    return m;
}

void require_entrance_ray(const Universe& U, const Path& p, std::size_t y) {
    if (y >= U.size()) throw PreconditionError("ray index out of range");
    if (!upset(U, down(U, p[0]))[y]) throw PreconditionError("ray is not in the upset of the downset of X0");
    if (!U.adjacent(y, p[2])) throw PreconditionError("X2 is not in QL of the ray");
}

} // namespace

EntranceExit entrance_exit(const Universe& U, const Path& p) {
    require_entrance_shape(U, p);
    return {narrow_entrance(U, p), narrow_exit(U, p)};
}

Modification entrance_modification(const Universe& U, const Path& p, std::size_t y) {
    require_entrance_shape(U, p);
    if (!is_minimal(U, p)) throw PreconditionError("entrance modification needs a minimal path");
    if (!narrow_entrance(U, p)) throw PreconditionError("path has wide entrance");
    require_entrance_ray(U, p, y);
    return splice_start(U, p, y, false);
}

Modification entrance_modification(const Universe& U, const Path& p, std::size_t w, std::size_t y,
                                   std::size_t y_prime) {
    require_entrance_shape(U, p);
    if (!is_minimal(U, p)) throw PreconditionError("entrance modification needs a minimal path");
    if (narrow_entrance(U, p)) throw PreconditionError("path has narrow entrance");
    require_entrance_ray(U, p, y);
    if (w >= U.size() || !U.preceq(p[0], w) || !U.adjacent(w, p[2]))
        throw PreconditionError("W must lie in the upset of X0 with X2 in QL(W)");
    if (y_prime >= U.size() || !interval_member(U.ray(y_prime), U.ray(w), U.ray(y)))
        throw PreconditionError("Y' is not in the interval [W, Y]");
    return splice_start(U, p, y_prime, false);
}

Modification exit_modification(const Universe& U, const Path& p, std::size_t w) {
    require_entrance_shape(U, p);
    if (!is_minimal(U, p)) throw PreconditionError("exit modification needs a minimal path");
    if (!narrow_exit(U, p)) throw PreconditionError("path has wide exit");
    Path r = reversed(p);
    require_entrance_ray(U, r, w);
    Modification m = splice_start(U, r, w, true);
    m.path = reversed(m.path);
    return m;
}

// ---- domination -----------------------------------------------------------

std::vector<CheckResult> check_domination_theorems(const Universe& U, const Path& x, const Path& y) {
    if (!is_path(U, x) || !is_path(U, y)) throw PreconditionError("both inputs must be QL-paths");
    if (!dominates(U, y, x)) throw PreconditionError("second path does not dominate the first");
    std::vector<CheckResult> out;
    auto add = [&](std::string name, bool applies, bool ok, std::string detail = {}) {
        CheckResult r{std::move(name), CheckResult::pass, std::move(detail)};
        if (!applies)
            r.status = CheckResult::skipped;
        else if (!ok)
            r.status = CheckResult::fail;
        out.push_back(std::move(r));
    };
    bool xmin = is_minimal(U, x), ymin = is_minimal(U, y);
    add("minimality transfer", ymin, xmin, "dominator minimal, dominated path not minimal");

    std::size_t n = length(x);
    if (xmin && n >= 2) {
        Path xi(x.begin() + 1, x.end() - 1), yi(y.begin() + 1, y.end() - 1);
        add("inner subpath domination", true, is_minimal(U, yi), "inner subpath of the dominator is not minimal");
    } else {
        add("inner subpath domination", false, true);
    }

    bool both = xmin && ymin && n >= 1 && x.front() != x.back() && y.front() != y.back();
    if (!both) {
        for (auto name : {"anchor set transfer", "twin correspondence", "single correspondence",
                          "legal and illegal anchors", "flock correspondence", "isolated twin correspondence",
                          "flocky correspondence"})
            add(name, false, true);
        return out;
    }
    AnchorSet S = anchor_set(U, x);
    auto tx = twins_and_singles(U, x), ty = twins_and_singles(U, y);
    bool transfer = is_anchor_set(U, y, S.anchors);
    add("anchor set transfer", true, transfer, "anchor set of the dominated path does not fit the dominator");
    add("twin correspondence", true, tx.twin_pair == ty.twin_pair, "twin pattern differs");
    add("single correspondence", true, tx.single == ty.single, "single pattern differs");
    if (!transfer) {
        add("legal and illegal anchors", true, false, "no common anchor set");
        for (auto name : {"flock correspondence", "isolated twin correspondence", "flocky correspondence"})
            add(name, false, true);
        return out;
    }
    AnchorSet Sy = rebase(U, y, S.anchors);
    add("legal and illegal anchors", true, Sy.legal == S.legal && Sy.illegal == S.illegal,
        "anchor assignment differs");
    auto fx = flocks(U, x, S), fy = flocks(U, y, Sy);
    add("flock correspondence", true, fx.flocks == fy.flocks, "maximal flocks differ");
    add("isolated twin correspondence", true, fx.isolated == fy.isolated, "isolated twin pairs differ");
    add("flocky correspondence", true, is_flocky(U, x, S) == is_flocky(U, y, Sy), "flocky status differs");
    return out;
}

// ---- serialization --------------------------------------------------------

std::string to_string(const Universe& U, const Path& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += " - ";
        s += p[i] < U.size() ? to_string(U.ray(p[i])) : "?";
    }
    return s;
}

nlohmann::json path_to_json(const Universe& U, const Path& p) {
    auto j = nlohmann::json::array();
    for (auto i : p) j.push_back(to_string(U.ray(i)));
    return j;
}

Path path_from_json(const Universe& U, const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("path must be an array of rays");
    Path p;
    for (auto& e : j) {
        if (!e.is_string()) throw ParseError("path entries must be ray strings");
        p.push_back(U.index_of(parse_ray(e.get<std::string>(), U.form().kind())));
    }
    return p;
}

nlohmann::json anchors_to_json(const Universe& U, const AnchorSet& S) {
    nlohmann::json j;
    j["m"] = S.m();
    j["anchors"] = path_to_json(U, S.anchors);
    j["legal"] = S.legal;
    auto il = nlohmann::json::array();
    for (auto& v : S.illegal) il.push_back(v ? nlohmann::json(*v) : nlohmann::json());
    j["illegal"] = il;
    j["twin_pairs"] = S.twin_pair;
    return j;
}

nlohmann::json flocks_to_json(const FlockPartition& f) {
    return {{"flocks", f.flocks}, {"isolated", f.isolated}, {"singles", f.singles}};
}

const char* to_string(Dir d) { return d == Dir::forward ? "forward" : "backward"; }

nlohmann::json trace_to_json(const Universe& U, const std::vector<ReduceStep>& trace) {
    auto j = nlohmann::json::array();
    for (auto& s : trace) {
        nlohmann::json e{{"i", s.i},
                         {"ray", to_string(U.ray(s.y))},
                         {"dir", to_string(s.dir)},
                         {"before", path_to_json(U, s.before)},
                         {"after", path_to_json(U, s.after)}};
        if (s.bridge) e["bridge"] = {{"path", path_to_json(U, s.bridge->path)}, {"support", s.bridge->support}};
        j.push_back(std::move(e));
    }
    return j;
}

} // namespace sqf
