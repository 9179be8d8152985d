#include "gog/presets.hpp"

namespace gog {

std::vector<std::string> preset_names() {
  return {"trefoil", "fig8", "graph_manifold", "mixed", "hnn_bundle", "trefoil_fig8"};
}

VertexGroup make_trefoil_vertex() { return VertexGroup::make_cone_sfs({{2, 1}, {3, 1}}); }

VertexGroup make_pants_vertex() {
  // F_2 x Z over a pair of pants: boundary words x1, x2, (x1 x2)^-1.
  FreeWord b3;
  b3.l = {-2, -1};
  return VertexGroup::make_circle_bundle(
      2, {CBTorus{"t0", fw_gen(1)}, CBTorus{"t1", fw_gen(2)}, CBTorus{"t2", b3}});
}

VertexGroup make_fig8_vertex() {
  QuadRing R{-1, -1};  // tau^2 = -tau - 1
  Mat2q a{qi(1), qi(1), qi(0), qi(1)};
  Mat2q b{qi(1), qi(0), qi(0, -1), qi(1)};
  // Relation a w = w b with w = b a^-1 b^-1 a.
  FreeWord lhs, rhs;
  lhs.l = {1, 2, -1, -2, 1};
  rhs.l = {2, -1, -2, 1, 2};
  // Cusp: meridian a, longitude b a^-1 b^-1 a^2 b^-1 a^-1 b = -[[1, 4tau+2],[0,1]].
  KLCusp cusp;
  cusp.name = "c0";
  cusp.conj = mq_id();
  FreeWord mu, lam;
  mu.l = {1};
  lam.l = {2, -1, -2, 1, 1, -2, -1, 2};
  cusp.basis_words = {mu, lam};
  return VertexGroup::make_kleinian(R, {{"a", a}, {"b", b}}, {{lhs, rhs}}, {cusp});
}

VertexGroup make_wlink_vertex() {
  QuadRing R{0, -1};  // tau^2 = -1 (Gaussian)
  Mat2q a{qi(1), qi(1), qi(0), qi(1)};
  Mat2q b{qi(1), qi(0), qi(-1, 1), qi(1)};
  // w = b a b^-1 a^-1 b^-1 a b commutes with a (both lie in the cusp at infinity).
  FreeWord w, u;
  w.l = {2, 1, -2, -1, -2, 1, 2};
  u.l = {1, 2, -1, -2, -1, 2, 1};
  FreeWord lhs = fw_mul(fw_gen(1), w), rhs = fw_mul(w, fw_gen(1));
  // Cusp at infinity: basis (a, w); w = -[[1, -1-2tau],[0,1]].
  KLCusp c0;
  c0.name = "c0";
  c0.conj = mq_id();
  c0.basis_words = {fw_gen(1), w};
  // Cusp at 0: conjugate by S = [[0,-1],[1,0]]; basis (b, u);
  // S b S^-1 = [[1, 1-tau],[0,1]], S u S^-1 = -[[1, -(3+tau)],[0,1]].
  KLCusp c1;
  c1.name = "c1";
  c1.conj = Mat2q{qi(0), qi(-1), qi(1), qi(0)};
  c1.basis_words = {fw_gen(2), u};
  return VertexGroup::make_kleinian(R, {{"a", a}, {"b", b}}, {{lhs, rhs}}, {c0, c1});
}

GraphOfGroups preset(const std::string& name) {
  GraphOfGroups G;
  if (name == "trefoil") {
    G.add_vertex("V0", make_trefoil_vertex());
  } else if (name == "fig8") {
    G.add_vertex("V0", make_fig8_vertex());
  } else if (name == "graph_manifold") {
    int v0 = G.add_vertex("V0", make_pants_vertex());
    int v1 = G.add_vertex("V1", make_pants_vertex());
    Edge e;
    e.name = "e0";
    e.v_minus = v0;
    e.t_minus = 0;
    e.a_minus = Mat2z{1, 0, 0, 1};
    e.v_plus = v1;
    e.t_plus = 0;
    e.a_plus = Mat2z{0, 1, 1, 0};  // swap base and fiber directions
    G.add_edge(e);
  } else if (name == "hnn_bundle") {
    int v0 = G.add_vertex("V0", make_pants_vertex());
    Edge e;
    e.name = "e0";
    e.v_minus = v0;
    e.t_minus = 0;
    e.a_minus = Mat2z{1, 0, 0, 1};
    e.v_plus = v0;
    e.t_plus = 1;
    e.a_plus = Mat2z{1, 1, 0, 1};  // shear: transported fiber picks up base direction
    G.add_edge(e);
  } else if (name == "mixed") {
    int v0 = G.add_vertex("V0", make_trefoil_vertex());
    int v1 = G.add_vertex("V1", make_wlink_vertex());
    Edge e;
    e.name = "e0";
    e.v_minus = v0;
    e.t_minus = 0;
    e.a_minus = Mat2z{1, 0, 0, 1};
    e.v_plus = v1;
    e.t_plus = 1;  // glue to cusp c1; c0 stays free
    e.a_plus = Mat2z{0, 1, 1, 0};
    G.add_edge(e);
  } else if (name == "trefoil_fig8") {
    int v0 = G.add_vertex("V0", make_trefoil_vertex());
    int v1 = G.add_vertex("V1", make_fig8_vertex());
    Edge e;
    e.name = "e0";
    e.v_minus = v0;
    e.t_minus = 0;
    e.a_minus = Mat2z{1, 0, 0, 1};
    e.v_plus = v1;
    e.t_plus = 0;
    e.a_plus = Mat2z{0, 1, 1, 0};
    G.add_edge(e);
  } else {
    throw usage_error("unknown preset '" + name + "'");
  }
  return G;
}

}  // namespace gog
