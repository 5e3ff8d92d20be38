#pragma once

/**
 * @file qlpaths.hpp
 * @brief Paths in the QL-graph of a finite universe: reductions, optimality,
 *        minimality, anchors, flocks, tracks and anchor diagrams.
 *
 * A path is a sequence of universe indices.  Every notion here (stars,
 * saturations, up- and downsets, optimality) is relative to the universe,
 * so "optimal" means optimal against the rays that U happens to contain.
 */

#include "sqf/qlcore.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sqf {

using Path = std::vector<std::size_t>;

// ---- graph ----------------------------------------------------------------

struct QlGraph {
    std::size_t vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j
    std::vector<std::size_t> loops;
    // i -> j when QL(i) is strictly inside QL(j); filled by decorate().
    std::vector<std::pair<std::size_t, std::size_t>> arrows;
    // i < j with equal stars; filled by decorate().
    std::vector<std::pair<std::size_t, std::size_t>> equivalent;
};

QlGraph build_ql_graph(const Universe& U);
QlGraph decorate(const Universe& U);

std::string graph_to_dot(const Universe& U, const QlGraph& g);
nlohmann::json graph_to_json(const Universe& U, const QlGraph& g);

// ---- paths and reductions -------------------------------------------------

bool is_path(const Universe& U, const Path& p);
bool is_direct(const Universe& U, const Path& p);

enum class Dir { forward, backward };

std::optional<Path> basic_reduction(const Universe& U, const Path& p, std::size_t i, Dir d);

struct Bridge {
    Path path;                          // (X0, Y1..Ym, Xn)
    std::vector<std::size_t> support;   // c(1) < ... < c(m)
};

bool is_bridge(const Universe& U, const Path& over, const Bridge& b);
// Some support making `path` a bridge over `over`, if one exists.
std::optional<std::vector<std::size_t>> bridge_support(const Universe& U, const Path& over, const Path& path);

struct Reduction {
    Path path;
    Bridge bridge;
};

// Throws PreconditionError unless y is in sat_QL(X_i).
std::optional<Reduction> elementary_reduction(const Universe& U, const Path& p, std::size_t i,
                                              std::size_t y, Dir d);

enum class ReduceMode { basic, elementary };

struct ReduceStep {
    std::size_t i = 0;
    std::size_t y = 0;
    Dir dir = Dir::forward;
    Path before;
    Path after;
    std::optional<Bridge> bridge;
};

// First applicable reduction in (i, direction, y) order until none is left.
std::vector<ReduceStep> reduce(const Universe& U, const Path& p, ReduceMode mode);

RaySet widehat_ql(const Universe& U, std::size_t x);
bool admits_elementary_reduction(const Universe& U, const Path& p);
bool is_optimal(const Universe& U, const Path& p);

bool is_enlargement_of(const Universe& U, const Path& y, const Path& x);
bool dominates(const Universe& U, const Path& y, const Path& x);

std::vector<std::optional<std::size_t>> distances(const Universe& U, std::size_t from);
std::optional<Path> minimal_path(const Universe& U, std::size_t from, std::size_t to);
bool is_minimal(const Universe& U, const Path& p);

// ---- order cones ----------------------------------------------------------

RaySet up(const Universe& U, std::size_t x);
RaySet down(const Universe& U, std::size_t x);
RaySet upset(const Universe& U, const RaySet& s);
RaySet downset(const Universe& U, const RaySet& s);

// ---- twins and anchors ----------------------------------------------------

struct TwinAnnotation {
    std::vector<bool> twin_pair;  // (X_p, X_p+1), size n
    std::vector<bool> single;     // size n+1
};

TwinAnnotation twins_and_singles(const Universe& U, const Path& p);

enum class Strategy { greedy, special };

struct AnchorSet {
    std::vector<std::size_t> anchors;                 // Y_0..Y_m as universe indices
    std::vector<std::size_t> legal;                   // per position, index into anchors
    std::vector<std::optional<std::size_t>> illegal;  // per position
    std::vector<bool> twin_pair;                      // per adjacent pair

    std::size_t m() const { return anchors.size() - 1; }
};

struct AnchorLayout {
    std::size_t count = 0;  // m + 1
    std::vector<std::size_t> legal;
    std::vector<std::optional<std::size_t>> illegal;
};

// Slot structure the procedure produces for a given twin pattern.
AnchorLayout anchor_layout(const std::vector<bool>& twin_pair);

AnchorSet anchor_set(const Universe& U, const Path& p, Strategy s = Strategy::greedy);
bool is_anchor_set(const Universe& U, const Path& p, const std::vector<std::size_t>& anchors);
// The assignment of given anchors to p; throws PreconditionError if they do not fit.
AnchorSet rebase(const Universe& U, const Path& p, const std::vector<std::size_t>& anchors);

bool is_sql_pair(const Universe& U, std::size_t y1, std::size_t y2);
bool is_direct_sql_sequence(const Universe& U, const std::vector<std::size_t>& seq);

// ---- flocks and tracks ----------------------------------------------------

struct FlockPartition {
    std::vector<std::pair<std::size_t, std::size_t>> flocks;  // maximal [p, q], q - p >= 2
    std::vector<std::size_t> isolated;                        // p of (X_p, X_p+1)
    std::vector<std::size_t> singles;
};

FlockPartition flocks(const Universe& U, const Path& p, const AnchorSet& S);

struct Track {
    std::size_t k = 0;
    std::size_t t = 0;  // anchors Y_k..Y_k+t+1
    bool operator==(const Track&) const = default;
};

struct TrackPartition {
    std::vector<Track> tracks;
    std::vector<std::pair<std::size_t, std::size_t>> trackless;  // anchor index ranges
};

TrackPartition tracks(const Universe& U, const AnchorSet& S);
bool is_flocky(const Universe& U, const Path& p, const AnchorSet& S);

// choices[i] must lie in up(Y_k+i) & up(Y_k+i+1); empty means first by index.
Path flock_modification(const Universe& U, const Path& p, const AnchorSet& S, const Track& tr,
                        const std::vector<std::size_t>& choices = {});
Path total_flock_modification(const Universe& U, const Path& p, const AnchorSet& S);

// ---- anchor diagrams ------------------------------------------------------

struct DiagramEdge {
    std::string a, b;  // "x3", "y1"
    enum Kind { edge, arrow, equivalent } kind = edge;
    bool operator==(const DiagramEdge&) const = default;
};

struct AnchorDiagram {
    std::vector<std::string> upper;  // ray encodings of the path
    std::vector<std::string> lower;  // ray encodings of the anchors
    std::vector<DiagramEdge> edges;
    bool operator==(const AnchorDiagram&) const = default;
};

AnchorDiagram anchor_diagram(const Universe& U, const Path& p, const AnchorSet& S);
std::string diagram_to_dot(const AnchorDiagram& d);
nlohmann::json diagram_to_json(const AnchorDiagram& d);
AnchorDiagram diagram_from_json(const nlohmann::json& j);

struct QlBlock {
    std::size_t k = 0, t = 0;  // anchors Y_k..Y_k+t form a QL-path
    std::optional<std::size_t> p;  // X_p..X_p+t when the lift to singles exists
};

struct QlBlocks {
    std::vector<QlBlock> blocks;
    std::vector<std::size_t> twin_anchor_edges;  // anchors of twin pairs with a ql neighbour
};

QlBlocks ql_blocks(const Universe& U, const Path& p, const AnchorSet& S);

// ---- entrance and exit ----------------------------------------------------

struct EntranceExit {
    bool narrow_entrance = true;
    bool narrow_exit = true;
};

EntranceExit entrance_exit(const Universe& U, const Path& p);

struct Modification {
    Path path;
    bool twin = false;     // the new end pair is a twin pair
    bool minimal = false;
    bool narrow = false;   // entrance (or exit) of the result
};

// (X0, Y, X2, ..) for Y in (X0 down) up with X2 in QL(Y); minimal input.
Modification entrance_modification(const Universe& U, const Path& p, std::size_t y);
// Same with Y' taken from the interval [W, Y], W in X0 up with X2 in QL(W).
Modification entrance_modification(const Universe& U, const Path& p, std::size_t w, std::size_t y,
                                   std::size_t y_prime);
Modification exit_modification(const Universe& U, const Path& p, std::size_t w);

// ---- domination -----------------------------------------------------------

struct CheckResult {
    std::string name;
    enum Status { pass, fail, skipped } status = pass;
    std::string detail;
};

std::vector<CheckResult> check_domination_theorems(const Universe& U, const Path& x, const Path& y);

// ---- serialization --------------------------------------------------------

std::string to_string(const Universe& U, const Path& p);
nlohmann::json path_to_json(const Universe& U, const Path& p);
Path path_from_json(const Universe& U, const nlohmann::json& j);
nlohmann::json anchors_to_json(const Universe& U, const AnchorSet& S);
nlohmann::json flocks_to_json(const FlockPartition& f);
nlohmann::json trace_to_json(const Universe& U, const std::vector<ReduceStep>& trace);
const char* to_string(Dir d);

} // namespace sqf
