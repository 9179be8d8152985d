#pragma once
// Graphs of groups with rank-2 free-abelian edge groups.
//
// A vertex carries one of the four VertexGroup backends; an edge carries a Z^2
// edge group with two injections, one into a declared peripheral torus on each
// side, given by 2x2 integer matrices in the torus bases:
//
//     edge coords x  |->  torus coords A_minus * x   (at v_minus, torus t_minus)
//     edge coords x  |->  torus coords A_plus  * x   (at v_plus,  torus t_plus)
//
// Self-edges (v_minus == v_plus) are allowed. A dart is an oriented edge; the
// forward dart runs from the minus side to the plus side.

#include <optional>
#include <string>
#include <vector>

#include "gog/backends.hpp"
#include "gog/mat2.hpp"

namespace gog {

struct Edge {
  std::string name;
  int v_minus = 0, v_plus = 0;  // vertex indices
  int t_minus = 0, t_plus = 0;  // torus indices within those vertices
  Mat2z a_minus, a_plus;        // edge-basis -> torus-basis coordinates
};

struct Dart {
  int edge = 0;
  bool fwd = true;  // forward: minus -> plus

  Dart rev() const { return {edge, !fwd}; }
  bool operator==(const Dart&) const = default;
};

class GraphOfGroups {
 public:
  int add_vertex(const std::string& name, VertexGroup vg);
  int add_edge(Edge e);  // validates indices immediately

  int vertex_count() const { return (int)verts_.size(); }
  int edge_count() const { return (int)edges_.size(); }
  const VertexGroup& vg(int v) const { return verts_[(size_t)v].second; }
  const std::string& vertex_name(int v) const { return verts_[(size_t)v].first; }
  int vertex_index(const std::string& name) const;  // -1 if unknown
  const Edge& edge(int e) const { return edges_[(size_t)e]; }
  int edge_index(const std::string& name) const;  // -1 if unknown

  int base() const { return base_; }
  void set_base(int v);

  // --- dart geometry ---
  int dart_origin(Dart d) const { return d.fwd ? edge(d.edge).v_minus : edge(d.edge).v_plus; }
  int dart_target(Dart d) const { return d.fwd ? edge(d.edge).v_plus : edge(d.edge).v_minus; }
  int dart_torus_origin(Dart d) const { return d.fwd ? edge(d.edge).t_minus : edge(d.edge).t_plus; }
  int dart_torus_target(Dart d) const { return d.fwd ? edge(d.edge).t_plus : edge(d.edge).t_minus; }
  const Mat2z& dart_mat_origin(Dart d) const {
    return d.fwd ? edge(d.edge).a_minus : edge(d.edge).a_plus;
  }
  const Mat2z& dart_mat_target(Dart d) const {
    return d.fwd ? edge(d.edge).a_plus : edge(d.edge).a_minus;
  }
  std::string dart_name(Dart d) const { return d.fwd ? edge(d.edge).name : "~" + edge(d.edge).name; }

  // --- edge-group algebra ---
  // Is g (an element of the vertex at the TARGET of d) in the image of d's edge
  // group there? Returns the edge-group coordinates if so. Exact.
  std::optional<Vec2z> image_coords_at_target(Dart d, const VElem& g) const;
  // Realize edge coordinates x as a vertex element on either side of d.
  VElem edge_elem_at_origin(Dart d, const Vec2z& x) const;
  VElem edge_elem_at_target(Dart d, const Vec2z& x) const;

  // Britton pinch data for a spur (d, g, rev(d)) with g at the target of d:
  // if g = (edge image at target)(x), the spur equals the origin-side element of x.
  struct PinchHit {
    Vec2z edge_coords;
    VElem replacement;  // element of the vertex at the ORIGIN of d
  };
  std::optional<PinchHit> pinch(Dart d, const VElem& g) const;

  // --- validation ---
  // Structural soundness: names, index ranges, nonsingular edge matrices,
  // backend self-checks. Returns human-readable problems; empty = ok.
  std::vector<std::string> validate() const;
  // Geometric-decomposition validity on top of validate(): connectedness, no
  // degenerate vertex pieces carrying edges, full-lattice gluings, each
  // peripheral torus used by at most one edge end, and Seifert-Seifert gluings
  // must NOT match the fibers (transported fiber != +-fiber).
  std::vector<std::string> validate_jsj() const;

  // BFS tree from the base vertex: for each vertex, the dart sequence of a path
  // base -> vertex (empty for the base). Deterministic: smallest edge index
  // first, forward dart before backward. Throws if the graph is disconnected.
  std::vector<std::vector<Dart>> base_paths() const;

 private:
  std::vector<std::pair<std::string, VertexGroup>> verts_;
  std::vector<Edge> edges_;
  int base_ = 0;
};

}  // namespace gog
