#include "gog/path.hpp"

namespace gog {

static bool elem_matches_kind(const VertexGroup& vg, const VElem& g) {
  switch (vg.kind()) {
    case BackendKind::FreeAbelian: return std::holds_alternative<FAElem>(g);
    case BackendKind::CircleBundle: return std::holds_alternative<CBElem>(g);
    case BackendKind::ConeSFS: return std::holds_alternative<SFSElem>(g);
    case BackendKind::Kleinian: return std::holds_alternative<KLElem>(g);
  }
  return false;
}

void path_check(const GraphOfGroups& G, const PathWord& p) {
  if (p.v_start < 0 || p.v_start >= G.vertex_count()) throw usage_error("path start out of range");
  if (!elem_matches_kind(G.vg(p.v_start), p.g0))
    throw usage_error("path element backend mismatch at start");
  int at = p.v_start;
  for (auto& s : p.steps) {
    if (s.d.edge < 0 || s.d.edge >= G.edge_count()) throw usage_error("path dart out of range");
    if (G.dart_origin(s.d) != at)
      throw usage_error("path darts are not composable at vertex '" + G.vertex_name(at) + "'");
    at = G.dart_target(s.d);
    if (!elem_matches_kind(G.vg(at), s.g))
      throw usage_error("path element backend mismatch after dart " + G.dart_name(s.d));
  }
}

int path_end(const GraphOfGroups& G, const PathWord& p) {
  return p.steps.empty() ? p.v_start : G.dart_target(p.steps.back().d);
}

bool path_is_loop(const GraphOfGroups& G, const PathWord& p) {
  return path_end(G, p) == p.v_start;
}

PathWord path_vertex(const GraphOfGroups& G, int v, VElem g) {
  if (v < 0 || v >= G.vertex_count()) throw usage_error("vertex out of range");
  PathWord p;
  p.v_start = v;
  p.g0 = std::move(g);
  path_check(G, p);
  return p;
}

PathWord path_dart(const GraphOfGroups& G, Dart d) {
  if (d.edge < 0 || d.edge >= G.edge_count()) throw usage_error("dart out of range");
  PathWord p;
  p.v_start = G.dart_origin(d);
  p.g0 = G.vg(p.v_start).id();
  p.steps.push_back({d, G.vg(G.dart_target(d)).id()});
  return p;
}

PathWord path_concat(const GraphOfGroups& G, const PathWord& p, const PathWord& q) {
  if (path_end(G, p) != q.v_start)
    throw usage_error("paths are not composable: '" + G.vertex_name(path_end(G, p)) +
                      "' != '" + G.vertex_name(q.v_start) + "'");
  PathWord r = p;
  const VertexGroup& join = G.vg(q.v_start);
  if (r.steps.empty())
    r.g0 = join.mul(r.g0, q.g0);
  else
    r.steps.back().g = join.mul(r.steps.back().g, q.g0);
  for (auto& s : q.steps) r.steps.push_back(s);
  return r;
}

PathWord path_invert(const GraphOfGroups& G, const PathWord& p) {
  PathWord r;
  r.v_start = path_end(G, p);
  r.g0 = G.vg(r.v_start).inv(p.steps.empty() ? p.g0 : p.steps.back().g);
  for (size_t i = p.steps.size(); i-- > 0;) {
    Dart rd = p.steps[i].d.rev();
    const VElem& prev = (i == 0) ? p.g0 : p.steps[i - 1].g;
    r.steps.push_back({rd, G.vg(G.dart_target(rd)).inv(prev)});
  }
  return r;
}

PathWord path_pow(const GraphOfGroups& G, const PathWord& p, i64 k) {
  if (k != 0 && !path_is_loop(G, p)) throw usage_error("powers require a loop");
  PathWord base = k < 0 ? path_invert(G, p) : p;
  i64 n = k < 0 ? checked_neg(k) : k;
  PathWord acc = path_vertex(G, k == 0 ? p.v_start : base.v_start,
                             G.vg(k == 0 ? p.v_start : base.v_start).id());
  for (i64 i = 0; i < n; ++i) acc = path_concat(G, acc, base);
  return acc;
}

PathWord path_reduce(const GraphOfGroups& G, const PathWord& p, ReductionTrace* trace) {
  PathWord r = p;
  bool again = true;
  while (again) {
    again = false;
    for (size_t i = 0; i + 1 < r.steps.size(); ++i) {
      if (r.steps[i + 1].d != r.steps[i].d.rev()) continue;
      auto hit = G.pinch(r.steps[i].d, r.steps[i].g);
      if (!hit) continue;
      // (d, g, rev d) == replacement at the origin of d; merge into neighbors.
      const VertexGroup& home = G.vg(G.dart_origin(r.steps[i].d));
      VElem merged = home.mul(hit->replacement, r.steps[i + 1].g);
      if (trace)
        trace->push_back({(int)i, G.dart_name(r.steps[i].d), hit->edge_coords,
                          G.vg(G.dart_target(r.steps[i].d)).to_string(r.steps[i].g),
                          home.to_string(hit->replacement)});
      if (i == 0)
        r.g0 = home.mul(r.g0, merged);
      else
        r.steps[i - 1].g = home.mul(r.steps[i - 1].g, merged);
      r.steps.erase(r.steps.begin() + (long)i, r.steps.begin() + (long)i + 2);
      again = true;
      break;
    }
  }
  return r;
}

bool path_is_trivial(const GraphOfGroups& G, const PathWord& p, ReductionTrace* trace) {
  PathWord r = path_reduce(G, p, trace);
  return r.steps.empty() && G.vg(r.v_start).is_id(r.g0);
}

bool path_equal(const GraphOfGroups& G, const PathWord& p, const PathWord& q,
                ReductionTrace* trace) {
  if (p.v_start != q.v_start || path_end(G, p) != path_end(G, q))
    throw usage_error("equality requires paths with matching endpoints");
  return path_is_trivial(G, path_concat(G, p, path_invert(G, q)), trace);
}

i64 path_length(const GraphOfGroups& G, const PathWord& p) {
  return path_reduce(G, p).length();
}

i64 path_complexity(const GraphOfGroups& G, const PathWord& p) {
  i64 c = (i64)p.steps.size();
  c = checked_add(c, G.vg(p.v_start).len(p.g0));
  int at = p.v_start;
  for (auto& s : p.steps) {
    at = G.dart_target(s.d);
    c = checked_add(c, G.vg(at).len(s.g));
  }
  return c;
}

// Wrap-pair data of a reduced loop of positive length: the pair
// (d_n, g_n g_0, d_1) is pinchable iff d_1 == rev(d_n) and g_n g_0 lies in the
// edge image at the target of d_n (= the loop's base vertex).
static std::optional<GraphOfGroups::PinchHit> wrap_pinch(const GraphOfGroups& G,
                                                         const PathWord& p) {
  if (p.steps.empty()) return std::nullopt;
  if (p.steps.front().d != p.steps.back().d.rev()) return std::nullopt;
  const VertexGroup& home = G.vg(p.v_start);
  VElem w = home.mul(p.steps.back().g, p.g0);
  return G.pinch(p.steps.back().d, w);
}

bool path_is_cyclically_reduced(const GraphOfGroups& G, const PathWord& p) {
  if (!path_is_loop(G, p)) throw usage_error("cyclic reduction requires a loop");
  PathWord r = path_reduce(G, p);
  if (r.steps.empty()) return true;
  return !wrap_pinch(G, r).has_value();
}

CyclicReduction path_cyclic_reduce(const GraphOfGroups& G, const PathWord& p) {
  if (!path_is_loop(G, p)) throw usage_error("cyclic reduction requires a loop");
  CyclicReduction out;
  out.core = path_reduce(G, p, &out.trace);
  out.conj = path_vertex(G, p.v_start, G.vg(p.v_start).id());
  while (auto hit = wrap_pinch(G, out.core)) {
    const PathWord& r = out.core;
    size_t n = r.steps.size();  // n >= 2: a wrap pinch needs d_1 == rev(d_n) != d_n
    // Conjugator piece c = (g_0, d_1, id); new loop = c^-1 * r * c, explicitly:
    // (g_1, d_2, ..., d_{n-1}, g_{n-1} * replacement).
    PathWord c;
    c.v_start = r.v_start;
    c.g0 = r.g0;
    c.steps.push_back({r.steps.front().d, G.vg(G.dart_target(r.steps.front().d)).id()});
    out.trace.push_back({(int)(n - 1), G.dart_name(r.steps.back().d), hit->edge_coords,
                         G.vg(r.v_start).to_string(G.vg(r.v_start).mul(r.steps.back().g, r.g0)),
                         G.vg(G.dart_origin(r.steps.back().d)).to_string(hit->replacement)});
    PathWord next;
    next.v_start = G.dart_target(r.steps.front().d);
    next.g0 = r.steps.front().g;
    if (n == 2) {
      next.g0 = G.vg(next.v_start).mul(next.g0, hit->replacement);
    } else {
      next.steps.assign(r.steps.begin() + 1, r.steps.end() - 1);
      next.steps.back().g = G.vg(G.dart_target(next.steps.back().d))
                                .mul(next.steps.back().g, hit->replacement);
    }
    out.conj = path_concat(G, out.conj, c);
    out.core = std::move(next);
  }
  return out;
}

i64 path_cl(const GraphOfGroups& G, const PathWord& p) {
  return path_cyclic_reduce(G, p).core.length();
}

PathWord path_rebase(const GraphOfGroups& G, const PathWord& p,
                     const std::vector<std::vector<Dart>>& base_paths) {
  if (!path_is_loop(G, p)) throw usage_error("rebase requires a loop");
  int v = p.v_start;
  if ((size_t)v >= base_paths.size()) throw usage_error("rebase: missing base path");
  PathWord b;
  b.v_start = G.base();
  b.g0 = G.vg(G.base()).id();
  for (Dart d : base_paths[(size_t)v]) b.steps.push_back({d, G.vg(G.dart_target(d)).id()});
  return path_concat(G, path_concat(G, b, p), path_invert(G, b));
}

std::string path_to_string(const GraphOfGroups& G, const PathWord& p) {
  std::string s = G.vertex_name(p.v_start) + "(" + G.vg(p.v_start).to_string(p.g0) + ")";
  for (auto& st : p.steps) {
    int w = G.dart_target(st.d);
    s += " " + G.dart_name(st.d) + " " + G.vertex_name(w) + "(" + G.vg(w).to_string(st.g) + ")";
  }
  return s;
}

}  // namespace gog
