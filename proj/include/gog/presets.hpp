#pragma once
// Shipped example decompositions. Each returns a validated graph of groups.
//
//  - trefoil:       one Seifert piece over a disk with cone points (2,1), (3,1);
//                   boundary torus <q1 q2, h>. No edges.
//  - fig8:          one hyperbolic piece: the discrete parabolic-generated matrix
//                   group over tau^2 = -tau - 1 with one cusp (meridian a,
//                   longitude b a^-1 b^-1 a^2 b^-1 a^-1 b). No edges.
//  - graph_manifold: two trivial circle bundles over a pair of pants, glued along
//                   one boundary torus with a fiber-swapping map.
//  - hnn_bundle:    one circle bundle over a pair of pants with a self-edge
//                   joining two of its boundary tori by a fiber-shearing map.
//  - mixed:         the trefoil Seifert piece glued to one cusp of a two-cusped
//                   hyperbolic piece (Gaussian-integer matrix group); the other
//                   cusp stays free.
//  - trefoil_fig8:  the trefoil Seifert piece glued to the single cusp of the
//                   fig8 piece.

#include <string>
#include <vector>

#include "gog/graph.hpp"

namespace gog {

std::vector<std::string> preset_names();
GraphOfGroups preset(const std::string& name);

// Individual vertex builders (shared by presets and tests).
VertexGroup make_trefoil_vertex();                // ConeSFS (2,1), (3,1)
VertexGroup make_pants_vertex();                  // CircleBundle rank 2, tori t0,t1,t2
VertexGroup make_fig8_vertex();                   // Kleinian, 1 cusp "c0"
VertexGroup make_wlink_vertex();                  // Kleinian, 2 cusps "c0","c1"

}  // namespace gog
