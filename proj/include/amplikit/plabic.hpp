#ifndef AMPLIKIT_PLABIC_HPP
#define AMPLIKIT_PLABIC_HPP

// Planar bicolored graphs in a disk, with the standard cell machinery:
// trip permutations, local moves, perfect orientations, positroids, and
// path matrices.
//
// Embedding conventions (fixed once, used consistently everywhere):
//   - Boundary vertices are labeled 1..n in clockwise order around the disk
//     and each is incident to exactly one edge.
//   - Every vertex stores its incident edge ids in clockwise cyclic order.
//   - Trips turn maximally right at black vertices (previous edge in the
//     stored clockwise list) and maximally left at white vertices (next
//     edge in the stored clockwise list).
//   - Internal leaves are only allowed next to a boundary vertex (lollipops).
//
// Cells: a perfect orientation directs every edge so that each black vertex
// has exactly one outgoing edge and each white vertex exactly one incoming
// edge; its source set is the set of boundary labels whose edge points into
// the disk.  The positroid of the graph collects all source sets.  Path
// matrices of acyclic perfect orientations parametrize the cell; with unit
// weights the nonzero maximal minors recover the positroid (each minor
// counts noncrossing path families), giving an independent route.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "amplikit/combi.hpp"
#include "amplikit/json_io.hpp"
#include "amplikit/matrix.hpp"
#include "amplikit/rng.hpp"

namespace amplikit {

enum class VertexColor { black, white, boundary };

struct PlabicVertex {
  VertexColor color = VertexColor::boundary;
  std::vector<int> rotation;  // incident edge ids, clockwise
};

struct PlabicEdge {
  int u = -1;  // vertex ids (order irrelevant for the undirected graph)
  int v = -1;
  bool alive = true;  // deleted edges keep their id so rotations stay stable
};

struct DecoratedPermutation {
  std::vector<int> targets;            // targets[i-1] = trip end of i
  std::map<int, VertexColor> fixed;    // fixed label -> loop/coloop color
  bool operator==(const DecoratedPermutation&) const = default;
  int anti_excedances() const;
  std::string to_string() const;       // e.g. (3,4,5,1,2), fixed marked b/w
};

class PlabicGraph {
 public:
  // A disk with n boundary vertices and no internal vertices (only valid as
  // a building block: boundary vertices still need their edges).
  static PlabicGraph disk(int n_boundary);

  int n() const { return static_cast<int>(boundary_.size()); }
  int boundary_vertex(int label) const;           // vertex id for label 1..n
  const PlabicVertex& vertex(int id) const;
  const std::map<int, PlabicVertex>& vertices() const { return vertices_; }
  const std::vector<PlabicEdge>& edges() const { return edges_; }
  std::vector<int> live_edges() const;
  int edge_other_end(int edge_id, int vertex_id) const;
  int degree(int vertex_id) const;
  bool is_internal(int id) const;

  // --- construction -------------------------------------------------------

  int add_internal_vertex(VertexColor color);
  // Adds an edge between u and v; the edge is appended at the given rotation
  // positions (pos = index in the clockwise list after insertion; -1 = end).
  int add_edge(int u, int v, int pos_u = -1, int pos_v = -1);
  // Replaces a vertex's clockwise edge order; must be a permutation of the
  // current incident edges.
  void set_rotation(int vertex_id, std::vector<int> rotation);

  // Inserts a new boundary vertex so that it has the given label (old labels
  // >= label shift up by one) carrying a fresh internal leaf of the given
  // color next to it.
  void add_lollipop(int label, VertexColor color);

  // Bridge between the legs of `label` and the next boundary label
  // (cyclically).  x-bridges put the white vertex on `label`'s leg and the
  // black vertex on the successor's leg; y-bridges the other way around.
  void add_bridge_x(int label);
  void add_bridge_y(int label);

  // Drops an edge (closure boundaries); lollipop legs cannot be removed.
  void delete_edge(int edge_id);

  // --- structure ----------------------------------------------------------

  struct Validation {
    bool ok = true;
    std::vector<std::string> problems;
  };
  Validation validate() const;

  DecoratedPermutation trip_permutation() const;

  // Number of regions the graph cuts the disk into (Euler count).
  int region_count() const;
  int dimension() const { return region_count() - 1; }

  // Faces as cyclic edge id sequences (traced from the rotation system,
  // including the regions touching the disk boundary).
  std::vector<std::vector<int>> faces() const;

  // --- moves --------------------------------------------------------------

  // Square move: the four vertices must form a quadrilateral face, all
  // trivalent and alternating in color; flips the four colors.
  bool move_square(const std::vector<int>& four_cycle_vertices);
  std::vector<std::vector<int>> square_move_sites() const;

  // Contract an edge between two internal vertices of the same color.
  bool move_contract(int edge_id);
  // Split vertex id: the clockwise arc of `arc_len` edges starting at
  // rotation position `arc_start` moves to a new adjacent vertex of the
  // same color.
  bool move_split(int vertex_id, int arc_start, int arc_len);
  // Insert a degree-2 vertex in the middle of an edge / remove one.
  bool move_insert_degree2(int edge_id, VertexColor color);
  bool move_remove_degree2(int vertex_id);

  // Applies one uniformly random applicable move; returns its name.
  std::string apply_random_move(RngStream& rng);

  // --- orientations and cells ----------------------------------------------

  struct Orientation {
    // head[edge id] = vertex the edge points to.
    std::map<int, int> head;
    std::set<int> sources;  // boundary labels
  };

  // All perfect orientations (backtracking).  `forced_sinks`: boundary
  // labels whose edges must point toward the boundary.
  std::vector<Orientation> perfect_orientations(
      const std::set<int>& forced_sinks = {}) const;

  // All source sets, as sorted label vectors.
  std::set<std::vector<int>> positroid() const;

  bool has_orientation_with_sinks(const std::set<int>& sinks) const;

  // An acyclic perfect orientation (required to exist for graphs of cells),
  // optionally with forced boundary sinks.
  std::optional<Orientation> acyclic_orientation(
      const std::set<int>& forced_sinks = {}) const;

  // Path matrix of an acyclic perfect orientation: rows indexed by sources
  // (increasing), identity on source columns, entry (i, j) equal to the
  // signed boundary measurement with sign (-1)^{#sources strictly between
  // i and j}.  Missing weights count as 1.
  Mat path_matrix(const Orientation& orientation,
                  const std::map<int, Rat>& edge_weights = {}) const;

  // Positroid via unit-weight path-matrix minors (independent route).
  std::set<std::vector<int>> positroid_from_path_matrix() const;

  // --- serialization --------------------------------------------------------

  Json to_json() const;
  static PlabicGraph from_json(const Json& j);
  std::string to_dot() const;

 private:
  std::map<int, PlabicVertex> vertices_;
  std::vector<PlabicEdge> edges_;
  std::vector<int> boundary_;  // vertex ids by label order (clockwise)
  int next_vertex_id_ = 1;

  friend PlabicGraph butterfly_product(const PlabicGraph&, const PlabicGraph&,
                                       const std::vector<int>&,
                                       const std::vector<int>&, int);
  int subdivide_leg(int label, VertexColor color);
};

// --- BCFW product ------------------------------------------------------------

// Joins the graph of the left cell (markers left_markers, as product labels,
// with {a, b, n} = the 3rd-from-last, 2nd-from-last... see below) and the
// right cell through the butterfly fragment.  Marker conventions:
//   left_markers  = {1, ..., a, b, n}   (a, b adjacent; n last)
//   right_markers = {b, ..., c, d, n}   (c, d, n the last three)
// n must be the common final marker; boundary labels of the product are
// 1..n.  The i-th boundary vertex of `left` corresponds to left_markers[i-1]
// (and similarly for `right`).
PlabicGraph butterfly_product(const PlabicGraph& left,
                              const PlabicGraph& right,
                              const std::vector<int>& left_markers,
                              const std::vector<int>& right_markers, int n);

// Expected bases of the product positroid, computed combinatorially from the
// factors' positroids (the six-case table; bases as sorted product labels).
// The primed positroids are the bridge closures: left under a shear toward b
// at a, right under shears toward n at d and toward d at c.
std::set<std::vector<int>> butterfly_positroid_table(
    const std::set<std::vector<int>>& left_positroid,
    const std::set<std::vector<int>>& right_positroid,
    const std::vector<int>& left_markers, const std::vector<int>& right_markers,
    int n);

// Bridge closure helper: bases(P) extended by {I : i in I, j not in I,
// (I \ i) + j in P} (the effect of one shear col_i += t col_j on bases).
std::set<std::vector<int>> bridge_closure(
    const std::set<std::vector<int>>& bases, int i, int j);

// Decorated permutation encoded by a positroid on markers 1..n, recovered
// from its bases alone: i maps to the first marker j (cyclically) with i in
// the span of columns i+1..j.  Unused markers become black fixed points,
// markers in every basis white ones.  Agrees with trip_permutation on
// graphs whose positroid this is.
DecoratedPermutation positroid_decorated_permutation(
    const std::set<std::vector<int>>& bases, int n);

}  // namespace amplikit

#endif  // AMPLIKIT_PLABIC_HPP
