#ifndef AMPLIKIT_BCFW_HPP
#define AMPLIKIT_BCFW_HPP

// Recipes: recursive build plans for cells of the nonnegative Grassmannian.
//
// A step tuple on a finite marker set N packs one product step and the
// dihedral adjustments that follow it:
//
//     ((a, b, c, d, n), pre_I, cyc^r, refl^s)
//
// where I <= N, n is the largest marker of N \ I, the pairs (a, b) and
// (c, d, n) are consecutive in N \ I, 0 <= r < |N| and s in {0, 1}.  A
// recipe on N is either trivial (the unique zero-row cell on N) or a
// recipe on N_L, a recipe on N_R, and a final step tuple on N, where
//
//     N_L = {x in N \ I : x <= a} + {b, n},
//     N_R = {x in N \ I : b <= x <= n}.
//
// The cell of a recipe is swept out by its representative matrix, built
// recursively: the product step maps (A, [alpha:beta:gamma:delta:eps], B)
// to the stacked matrix
//
//     rows of A   with column a -> A_a + (alpha/beta) A_b
//                 and column n -> (-1)^{k_R + 1} A_n,
//     one new row with alpha at a, beta at b, and (-1)^{k_R} times
//                 (gamma at c, delta at d, eps at n),
//     rows of B   with column d -> B_d + (delta/eps) B_n
//                 and column c -> B_c + (gamma/delta) (new B_d),
//
// followed by zero-column insertions at I, r cyclic shifts and s
// reflections.  Rank k = k_L + k_R + 1, and the cell has dimension 4k.

#include <array>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "amplikit/chords.hpp"
#include "amplikit/json_io.hpp"
#include "amplikit/matrix.hpp"
#include "amplikit/plabic.hpp"
#include "amplikit/rng.hpp"

namespace amplikit {

struct StepTuple {
  std::array<int, 5> prod{0, 0, 0, 0, 0};  // (a, b, c, d, n), absolute markers
  std::vector<int> pre;                    // zero-column markers I, ascending
  int cyc = 0;                             // number of cyclic shifts, 0 <= cyc < |N|
  int refl = 0;                            // number of reflections, 0 or 1

  bool operator==(const StepTuple&) const = default;
  Json to_json() const;
  static StepTuple from_json(const Json& j);
};

class Recipe {
 public:
  // Zero-row cell on the given markers (ascending, at least one marker).
  static Recipe trivial(std::vector<int> markers);

  // Product node; validates the step tuple against `markers` and checks the
  // factors sit on the induced left/right marker sets.  Throws
  // std::invalid_argument on violations.
  static Recipe product(Recipe left, Recipe right, StepTuple step,
                        std::vector<int> markers);

  bool is_trivial() const { return !node_; }
  const std::vector<int>& markers() const { return markers_; }
  int k() const;  // number of step tuples

  // Product-node accessors; throw std::logic_error on trivial recipes.
  const StepTuple& step() const;
  const Recipe& left() const;
  const Recipe& right() const;

  // Marker sets of the two factors of the root step.
  std::vector<int> left_factor_markers() const;
  std::vector<int> right_factor_markers() const;

  // Step tuples in generation order: left factor's, right factor's, own.
  std::vector<StepTuple> flat_steps() const;

  // Order-embedding relabel: markers()[i] -> image[i] everywhere.  `image`
  // must be strictly increasing and of matching size.
  Recipe relabel(const std::vector<int>& image) const;

  bool operator==(const Recipe& other) const;

  // {"markers": [...], "steps": [...]} with steps in generation order.  The
  // loader rebuilds the tree; it throws if the flat list admits zero or more
  // than one tree on the given markers.
  Json to_json() const;
  static Recipe from_json(const Json& j);
  std::string to_string() const;

 private:
  struct Node;  // defined below; holds the two factors and the root step
  std::vector<int> markers_;
  std::shared_ptr<const Node> node_;  // null for trivial recipes
};

struct Recipe::Node {
  Recipe left;
  Recipe right;
  StepTuple step;
};

// Build plan of the cell attached to a chord diagram: peel penultimate
// markers that no chord ends on (collected into the final step's insertion
// set), then split at the rightmost top chord.  The result has one product
// step per chord and no cyclic shifts or reflections.
Recipe recipe_from_diagram(const ChordDiagram& d);

// One positive 5-tuple per step, in generation order.
struct StepParams {
  Rat alpha, beta, gamma, delta, eps;
};
using BcfwParameters = std::vector<StepParams>;

BcfwParameters random_bcfw_parameters(int k, RngStream& rng);

// The stacked product matrix described atop this header.  `left`/`right`
// must carry the factor marker sets induced by prod; the result sits on
// their union.  Throws std::invalid_argument on marker mismatches.
LabeledMat bcfw_product_matrix(const LabeledMat& left, const StepParams& p,
                               const LabeledMat& right,
                               const std::array<int, 5>& prod);

// Representative matrix of the recipe's cell at the given parameters
// (params.size() == r.k()).
LabeledMat bcfw_matrix(const Recipe& r, const BcfwParameters& params);

// Matrix at random positive parameters (deterministic per stream state).
LabeledMat cell_point(const Recipe& r, RngStream& rng);

// Basis sets of the recipe's cell, computed combinatorially (product steps
// via the six-case table, dihedral steps by relabeling bases).  Matches the
// nonzero Plucker support of bcfw_matrix at positive parameters.
std::set<std::vector<int>> recipe_positroid(const Recipe& r);

// True iff some basis is disjoint from J (always true for rank 0).
bool is_coindependent(const std::vector<int>& j,
                      const std::set<std::vector<int>>& positroid);

// Every subset of up to four markers is coindependent.
bool is_four_coindependent(const std::set<std::vector<int>>& positroid,
                           const std::vector<int>& markers);

// A cell key is the full (sorted) basis list; cells coincide iff keys do.
using CellKey = std::set<std::vector<int>>;
std::string cell_key_string(const CellKey& key);

struct EnumeratedCell {
  CellKey key;
  Recipe witness;
};

// All rank-k cells on markers 1..n reachable from zero-row cells by
// products, zero-column insertions, cyclic shifts and reflections, each
// with one witness recipe.  Sorted by key.
std::vector<EnumeratedCell> enumerate_general_cells(int n, int k);

}  // namespace amplikit

#endif  // AMPLIKIT_BCFW_HPP
