#include "gog/graph.hpp"

#include <deque>

namespace gog {

int GraphOfGroups::add_vertex(const std::string& name, VertexGroup vg) {
  if (name.empty()) throw usage_error("vertex name must be non-empty");
  if (vertex_index(name) != -1) throw usage_error("duplicate vertex name '" + name + "'");
  verts_.push_back({name, std::move(vg)});
  return (int)verts_.size() - 1;
}

int GraphOfGroups::add_edge(Edge e) {
  if (e.name.empty()) throw usage_error("edge name must be non-empty");
  if (edge_index(e.name) != -1) throw usage_error("duplicate edge name '" + e.name + "'");
  auto check_side = [&](int v, int t) {
    if (v < 0 || v >= vertex_count()) throw usage_error("edge endpoint vertex out of range");
    if (t < 0 || t >= vg(v).torus_count())
      throw usage_error("edge endpoint torus out of range on vertex '" + vertex_name(v) + "'");
  };
  check_side(e.v_minus, e.t_minus);
  check_side(e.v_plus, e.t_plus);
  if (e.a_minus.det() == 0 || e.a_plus.det() == 0)
    throw usage_error("edge coordinate matrices must be nonsingular");
  edges_.push_back(std::move(e));
  return (int)edges_.size() - 1;
}

int GraphOfGroups::vertex_index(const std::string& name) const {
  for (int i = 0; i < vertex_count(); ++i)
    if (verts_[(size_t)i].first == name) return i;
  return -1;
}

int GraphOfGroups::edge_index(const std::string& name) const {
  for (int i = 0; i < edge_count(); ++i)
    if (edges_[(size_t)i].name == name) return i;
  return -1;
}

void GraphOfGroups::set_base(int v) {
  if (v < 0 || v >= vertex_count()) throw usage_error("base vertex out of range");
  base_ = v;
}

std::optional<Vec2z> GraphOfGroups::image_coords_at_target(Dart d, const VElem& g) const {
  const VertexGroup& w = vg(dart_target(d));
  auto c = w.torus_membership(dart_torus_target(d), g);
  if (!c) return std::nullopt;
  return mz_solve(dart_mat_target(d), *c);
}

VElem GraphOfGroups::edge_elem_at_origin(Dart d, const Vec2z& x) const {
  const VertexGroup& w = vg(dart_origin(d));
  return w.torus_elem(dart_torus_origin(d), mz_apply(dart_mat_origin(d), x));
}

VElem GraphOfGroups::edge_elem_at_target(Dart d, const Vec2z& x) const {
  const VertexGroup& w = vg(dart_target(d));
  return w.torus_elem(dart_torus_target(d), mz_apply(dart_mat_target(d), x));
}

std::optional<GraphOfGroups::PinchHit> GraphOfGroups::pinch(Dart d, const VElem& g) const {
  auto x = image_coords_at_target(d, g);
  if (!x) return std::nullopt;
  return PinchHit{*x, edge_elem_at_origin(d, *x)};
}

std::vector<std::string> GraphOfGroups::validate() const {
  std::vector<std::string> bad;
  if (verts_.empty()) bad.push_back("graph has no vertices");
  if (base_ < 0 || base_ >= vertex_count()) bad.push_back("base vertex out of range");
  for (int v = 0; v < vertex_count(); ++v) {
    for (auto& problem : vg(v).self_check())
      bad.push_back("vertex '" + vertex_name(v) + "': " + problem);
  }
  // (index ranges, name uniqueness, nonsingular matrices enforced at add_* time)
  return bad;
}

std::vector<std::string> GraphOfGroups::validate_jsj() const {
  std::vector<std::string> bad = validate();

  // Incident edge-end counts per (vertex, torus).
  std::vector<std::vector<int>> ends((size_t)vertex_count());
  for (int v = 0; v < vertex_count(); ++v) ends[(size_t)v].assign((size_t)vg(v).torus_count(), 0);
  for (auto& e : edges_) {
    ends[(size_t)e.v_minus][(size_t)e.t_minus]++;
    ends[(size_t)e.v_plus][(size_t)e.t_plus]++;
  }
  for (int v = 0; v < vertex_count(); ++v)
    for (int t = 0; t < vg(v).torus_count(); ++t)
      if (ends[(size_t)v][(size_t)t] > 1)
        bad.push_back("torus '" + vg(v).torus_name(t) + "' of vertex '" + vertex_name(v) +
                      "' is used by more than one edge end");

  // Degenerate pieces carrying edges.
  for (int v = 0; v < vertex_count(); ++v) {
    int deg = 0;
    for (auto& e : edges_) deg += (e.v_minus == v) + (e.v_plus == v);
    if (deg == 0) continue;
    if (vg(v).kind() == BackendKind::FreeAbelian)
      bad.push_back("vertex '" + vertex_name(v) +
                    "': free-abelian piece cannot carry edges (it is itself a torus)");
    if (vg(v).kind() == BackendKind::CircleBundle && vg(v).cb_rank() < 2)
      bad.push_back("vertex '" + vertex_name(v) +
                    "': circle bundle of base rank < 2 has free-abelian group; not a valid piece");
  }

  // Connectivity.
  if (vertex_count() > 0) {
    std::vector<char> seen((size_t)vertex_count(), 0);
    std::deque<int> q{base_};
    seen[(size_t)base_] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (auto& e : edges_) {
        for (int w : {e.v_minus == v ? e.v_plus : -1, e.v_plus == v ? e.v_minus : -1}) {
          if (w >= 0 && !seen[(size_t)w]) {
            seen[(size_t)w] = 1;
            q.push_back(w);
          }
        }
      }
    }
    for (int v = 0; v < vertex_count(); ++v)
      if (!seen[(size_t)v]) bad.push_back("vertex '" + vertex_name(v) + "' unreachable from base");
  }

  // Gluing maps must identify the full peripheral lattices, and Seifert-Seifert
  // gluings must not match fibers. Fiber coordinates in every torus basis: (0, 1).
  for (auto& e : edges_) {
    if (!e.a_minus.unimodular() || !e.a_plus.unimodular()) {
      bad.push_back("edge '" + e.name + "' does not glue full peripheral subgroups (non-unimodular)");
      continue;
    }
    bool sf_minus = vg(e.v_minus).has_fiber();
    bool sf_plus = vg(e.v_plus).has_fiber();
    if (sf_minus && sf_plus) {
      Mat2z transport = mz_mul(e.a_plus, mz_inv_unimodular(e.a_minus));
      Vec2z f = mz_apply(transport, {0, 1});
      if ((f.m == 0 && f.n == 1) || (f.m == 0 && f.n == -1))
        bad.push_back("edge '" + e.name + "' glues Seifert pieces with matching fibers");
    }
  }

  return bad;
}

std::vector<std::vector<Dart>> GraphOfGroups::base_paths() const {
  std::vector<std::vector<Dart>> paths((size_t)vertex_count());
  std::vector<char> seen((size_t)vertex_count(), 0);
  std::deque<int> q{base_};
  seen[(size_t)base_] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int ei = 0; ei < edge_count(); ++ei) {
      for (bool fwd : {true, false}) {
        Dart d{ei, fwd};
        if (dart_origin(d) != v) continue;
        int w = dart_target(d);
        if (seen[(size_t)w]) continue;
        seen[(size_t)w] = 1;
        paths[(size_t)w] = paths[(size_t)v];
        paths[(size_t)w].push_back(d);
        q.push_back(w);
      }
    }
  }
  for (int v = 0; v < vertex_count(); ++v)
    if (!seen[(size_t)v])
      throw usage_error("graph is disconnected: no path from base to '" + vertex_name(v) + "'");
  return paths;
}

}  // namespace gog
