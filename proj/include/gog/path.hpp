#pragma once
// Path algebra for the fundamental group of a graph of groups.
//
// A path word is (g0, d1, g1, d2, ..., dn, gn): a start vertex element followed
// by alternating darts and elements of the dart-target vertex groups. Reduction
// is Britton's procedure: a spur (d, g, rev(d)) with g in the image of d's edge
// group at its target pinches to a vertex element on the origin side. Reduced
// words of positive length are never trivial, and two paths are equal in the
// fundamental group iff their quotient reduces to the empty word.
//
// Every pinch is recorded with its exact witness (edge-group coordinates), so a
// reduction is replayable by an independent checker using only the backend
// group oracles.

#include <optional>
#include <string>
#include <vector>

#include "gog/graph.hpp"

namespace gog {

struct PathStep {
  Dart d;
  VElem g;  // element of the vertex group at the target of d
};

struct PathWord {
  int v_start = 0;
  VElem g0;
  std::vector<PathStep> steps;

  i64 length() const { return (i64)steps.size(); }
};

// One Britton pinch: at position `at` (0-based dart index), the spur
// (dart, middle, rev(dart)) collapsed with edge coordinates `edge_coords`; the
// middle and replacement normal forms are recorded for certificate replay.
struct ReductionStep {
  int at = 0;
  std::string dart;
  Vec2z edge_coords;
  std::string pinched;
  std::string replacement;
};
using ReductionTrace = std::vector<ReductionStep>;

// Structural validity: composable darts, elements on the right vertices.
void path_check(const GraphOfGroups& G, const PathWord& p);

int path_end(const GraphOfGroups& G, const PathWord& p);
bool path_is_loop(const GraphOfGroups& G, const PathWord& p);

PathWord path_vertex(const GraphOfGroups& G, int v, VElem g);
PathWord path_dart(const GraphOfGroups& G, Dart d);  // (id, d, id)
PathWord path_concat(const GraphOfGroups& G, const PathWord& p, const PathWord& q);
PathWord path_invert(const GraphOfGroups& G, const PathWord& p);
PathWord path_pow(const GraphOfGroups& G, const PathWord& p, i64 k);

// Britton reduction, leftmost pinch first. Deterministic.
PathWord path_reduce(const GraphOfGroups& G, const PathWord& p, ReductionTrace* trace = nullptr);

// Is the reduced form of p the trivial loop (length 0, identity element)?
bool path_is_trivial(const GraphOfGroups& G, const PathWord& p, ReductionTrace* trace = nullptr);

// Equality in the fundamental groupoid: same endpoints and p q^-1 reduces to
// the trivial loop. Throws usage_error if endpoints differ.
bool path_equal(const GraphOfGroups& G, const PathWord& p, const PathWord& q,
                ReductionTrace* trace = nullptr);

// Number of darts after reduction.
i64 path_length(const GraphOfGroups& G, const PathWord& p);

// Enumeration weight: darts + sum of vertex normal-form lengths (of p as given).
i64 path_complexity(const GraphOfGroups& G, const PathWord& p);

// A reduced loop is cyclically reduced iff it cannot be conjugated shorter:
// length 0, or the wrap pair (d_n, g_n g_0, d_1) is not pinchable (d_1 != rev(d_n),
// or g_n g_0 outside the edge image). Reduces p first.
bool path_is_cyclically_reduced(const GraphOfGroups& G, const PathWord& p);

struct CyclicReduction {
  PathWord core;   // cyclically reduced loop
  PathWord conj;   // p = conj * core * conj^-1 (a path from start(p) to start(core))
  ReductionTrace trace;
};
CyclicReduction path_cyclic_reduce(const GraphOfGroups& G, const PathWord& p);

// Conjugacy length: length of the cyclically reduced form.
i64 path_cl(const GraphOfGroups& G, const PathWord& p);

// Turn a loop at any vertex into a loop at the base via the BFS base paths.
PathWord path_rebase(const GraphOfGroups& G, const PathWord& p,
                     const std::vector<std::vector<Dart>>& base_paths);

std::string path_to_string(const GraphOfGroups& G, const PathWord& p);

}  // namespace gog
