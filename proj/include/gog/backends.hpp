#pragma once
// Vertex group backends: four computable group families behind one exact-oracle
// interface (multiplication, canonical equality, peripheral membership with witness,
// fiber data, vertex-level centralizers, max divisors, torus intersections).
//
//  - FreeAbelian(n): Z^n, elements = integer coordinate vectors.
//  - CircleBundle:   F_k x Z (trivial circle bundle over a compact surface with
//                    boundary), elements = (reduced free word, fiber exponent);
//                    each boundary torus = <(b, 0), (empty, 1)> for a boundary word b.
//  - ConeSFS:        Seifert piece over a disk with cone points: generators
//                    q_1..q_m and central h with q_i^{a_i} = h^{-b_i}; canonical
//                    form = alternating torsion syllables times h^t; boundary torus
//                    = <q_1...q_m, h>.
//  - Kleinian:       finitely generated group of exact 2x2 det-1 matrices over an
//                    imaginary quadratic ring, with declared peripheral (cusp)
//                    subgroups; equality is matrix equality.
//
// Everything is exact except the explicitly budgeted Kleinian searches
// (conjugating into a cusp, loxodromic root extraction), which report honesty
// flags instead of guessing.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gog/common.hpp"
#include "gog/freeword.hpp"
#include "gog/mat2.hpp"
#include "gog/quadint.hpp"

namespace gog {

// ---------- element types ----------

struct FAElem {
  std::vector<i64> c;
  bool operator==(const FAElem&) const = default;
};

struct CBElem {
  FreeWord w;
  i64 fiber = 0;
  bool operator==(const CBElem&) const = default;
};

struct SFSSyl {
  int idx = 0;  // cone index, 0-based
  i64 exp = 0;  // canonical: 1 <= exp <= alpha_idx - 1
  bool operator==(const SFSSyl&) const = default;
};

struct SFSElem {
  std::vector<SFSSyl> syl;  // adjacent entries have distinct idx
  i64 fiber = 0;            // exponent of central h
  bool operator==(const SFSElem&) const = default;
};

struct KLElem {
  Mat2q m;
  bool operator==(const KLElem&) const = default;
};

using VElem = std::variant<FAElem, CBElem, SFSElem, KLElem>;

enum class BackendKind { FreeAbelian, CircleBundle, ConeSFS, Kleinian };

std::string backend_kind_name(BackendKind k);

// ---------- descriptors ----------

// Vertex-level centralizer description.
struct VCent {
  enum class Kind {
    WholeGroup,    // g central (fiber power / abelian / +-I)
    Torus,         // a declared peripheral torus, conjugated by `conj`
    Cyclic,        // <root>, with primitivity flag
    RootAndFiber,  // <root, fiber> (Seifert non-peripheral case)
  } kind = Kind::WholeGroup;
  int torus = -1;
  VElem root;           // Cyclic / RootAndFiber
  VElem conj;           // conjugator u: C(g) = u . description . u^-1
  bool primitivity_verified = true;
  Flags flags;
};

// Result of vertex-level maximal-root extraction: g = root^d, d maximal.
struct VMaxDiv {
  i64 d = 1;
  VElem root;
  i64 bound = 1;  // the a-priori bound the search ran under (d <= bound)
  Flags flags;    // nonempty iff maximality is only search-verified within a budget
};

enum class TorusMeet { Trivial, FiberOnly, WholeTorus };

// Witnessed conjugation into a peripheral torus: conj^-1 * g * conj lies in torus
// `torus` with coordinates (m, n) in its basis.  (Equivalently g = conj * t * conj^-1.)
struct IntoTorus {
  int torus = 0;
  Vec2z coords;
  VElem conj;
  Flags flags;
};

enum class TraceClass { Parabolic, Loxodromic, Elliptic, Identityish };

// ---------- backend definitions ----------

struct CBTorus {
  std::string name;
  FreeWord bword;  // boundary word; basis = ((bword, 0), (empty, 1))
};

struct KLCusp {
  std::string name;
  Mat2q conj = mq_id();              // P with P * (cusp elements) * P^-1 upper triangular
  std::vector<FreeWord> basis_words;  // two words in the vertex generators
  // Derived at construction:
  Mat2q basis0 = mq_id(), basis1 = mq_id();  // matrices of the basis words
  i64 eps0 = 1, eps1 = 1;                    // sign of P B P^-1 = eps [[1, t],[0,1]]
  QuadInt t0, t1;                            // translation parts
  Mat2z coordmat;                            // columns (t0, t1) in (1, tau) coordinates
};

class VertexGroup {
 public:
  // --- construction ---
  static VertexGroup make_free_abelian(int rank);
  static VertexGroup make_circle_bundle(int rank, std::vector<CBTorus> tori);
  static VertexGroup make_cone_sfs(std::vector<std::pair<i64, i64>> cones);  // (alpha_i, beta_i)
  static VertexGroup make_kleinian(QuadRing ring, std::vector<std::pair<std::string, Mat2q>> gens,
                                   std::vector<std::pair<FreeWord, FreeWord>> relations,
                                   std::vector<KLCusp> cusps);

  BackendKind kind() const { return kind_; }

  // --- core group oracle ---
  VElem id() const;
  VElem mul(const VElem& x, const VElem& y) const;
  VElem inv(const VElem& x) const;
  VElem pow(const VElem& x, i64 e) const;
  bool eq(const VElem& x, const VElem& y) const;
  bool is_id(const VElem& x) const;
  // Normal-form length (complexity contribution of the element).
  i64 len(const VElem& x) const;
  std::string to_string(const VElem& x) const;

  // Named generators (without inverses).
  const std::vector<std::pair<std::string, VElem>>& generators() const { return gens_; }
  // Build an element from a word in the generators.
  VElem from_word(const FreeWord& w) const;

  // --- peripheral structure ---
  int torus_count() const;
  const std::string& torus_name(int t) const;
  int torus_index(const std::string& name) const;  // -1 if unknown
  // g = u^m v^n for the torus basis (u, v)? Exact for all backends.
  std::optional<Vec2z> torus_membership(int t, const VElem& g) const;
  VElem torus_elem(int t, const Vec2z& mn) const;

  // --- Seifert fiber data ---
  bool has_fiber() const { return kind_ == BackendKind::CircleBundle || kind_ == BackendKind::ConeSFS; }
  VElem fiber() const;
  std::optional<i64> fiber_power(const VElem& g) const;  // g = fiber^k?
  i64 max_cone_order() const;  // s_v: max alpha_i (ConeSFS), 1 otherwise

  // --- Kleinian data ---
  TraceClass trace_classify(const VElem& g) const;
  const QuadRing& ring() const { return ring_; }

  // --- theorem-facing vertex oracles ---
  VCent vertex_centralizer(const VElem& g, const WorkBudget& wb = {}) const;
  VMaxDiv vertex_max_divisor(const VElem& g, const WorkBudget& wb = {}) const;
  // Pre: g^n lies in torus t. Division-closure check; for Seifert backends may
  // instead certify g^d = fiber^e with d <= s_v. Returns (g in torus, d, e).
  struct DivClosed {
    bool in_torus = false;
    i64 d = 0, fiber_exp = 0;  // set when !in_torus (Seifert escape hatch)
  };
  DivClosed division_closed_check(int t, const VElem& g, i64 n) const;
  TorusMeet torus_intersection(int t1, const VElem& g, int t2) const;
  // Search u with u^-1 g u in some torus (or the given one). Exact for
  // FA/CB/SFS; bounded word-ball search for Kleinian (flags on exhaustion).
  std::optional<IntoTorus> conjugate_into_torus(const VElem& g, const WorkBudget& wb = {}) const;
  std::optional<IntoTorus> conjugate_into_torus_at(int t, const VElem& g,
                                                   const WorkBudget& wb = {}) const;
  // Vertex-level "is g conjugate to an element of the subgroup lattice L of torus t"
  // where L = image of an edge map (sublattice given by matrix A, full torus if A
  // unimodular). Used by cyclic-reducedness condition (3).
  struct ConjIntoImage {
    bool conjugate = false;
    Flags flags;  // budget exhaustion => conjugate=false + flag
  };
  ConjIntoImage conjugate_into_image(int t, const Mat2z& A, const VElem& g,
                                     const WorkBudget& wb = {}) const;

  // Does the described subgroup contain x? Exact for FA/CB/SFS descriptions;
  // Kleinian Cyclic membership is power-solved with a size guard (flag on cap).
  bool vcent_contains(const VCent& c, const VElem& x, Flags* fl = nullptr) const;
  // Deterministic sample of elements of the described subgroup (for soundness spot
  // checks: every sample must commute with the query element).
  std::vector<VElem> vcent_sample(const VCent& c, int count) const;

  // --- enumeration support (oracle harness) ---
  // All elements of normal-form length <= L (deduplicated, includes identity).
  std::vector<VElem> ball(i64 L, const WorkBudget& wb = {}) const;

  // Build-time data checks (relations hold, cusp bases parabolic/independent, ...).
  // Returns human-readable problems; empty = ok.
  std::vector<std::string> self_check() const;

  // Backend parameters (used by validators / emitters).
  int fa_rank() const { return fa_rank_; }
  int cb_rank() const { return cb_rank_; }
  const std::vector<CBTorus>& cb_tori() const { return cb_tori_; }
  const std::vector<std::pair<i64, i64>>& sfs_cones() const { return cones_; }
  const std::vector<KLCusp>& kl_cusps() const { return cusps_; }
  const std::vector<std::pair<FreeWord, FreeWord>>& kl_relations() const { return relations_; }

 private:
  struct KLCache;  // shared breadth-first word-ball cache (thread-safe)

  BackendKind kind_ = BackendKind::FreeAbelian;
  std::vector<std::pair<std::string, VElem>> gens_;

  // FreeAbelian
  int fa_rank_ = 0;
  // CircleBundle
  int cb_rank_ = 0;
  std::vector<CBTorus> cb_tori_;
  // ConeSFS
  std::vector<std::pair<i64, i64>> cones_;
  // Kleinian
  QuadRing ring_;
  std::vector<std::pair<FreeWord, FreeWord>> relations_;
  std::vector<KLCusp> cusps_;
  std::shared_ptr<KLCache> kl_cache_;

  // helpers
  SFSElem sfs_normal(std::vector<SFSSyl> syl, i64 fiber) const;
  std::pair<VElem, VElem> sfs_cyclic_core(const VElem& g) const;  // (core, conj)
  std::optional<std::pair<Vec2z, VElem>> kl_cusp_search(int t, const KLElem& g,
                                                        const WorkBudget& wb, Flags& fl) const;
  std::vector<std::pair<FreeWord, KLElem>> kl_ball(int radius, const WorkBudget& wb) const;
};

// Accessors with backend checking.
const FAElem& as_fa(const VElem& v);
const CBElem& as_cb(const VElem& v);
const SFSElem& as_sfs(const VElem& v);
const KLElem& as_kl(const VElem& v);

}  // namespace gog
