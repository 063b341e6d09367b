#ifndef AMPLIKIT_GRASSMANN_HPP
#define AMPLIKIT_GRASSMANN_HPP

// Plücker coordinates, positivity classification, exact sample generators,
// and the elementary matrix moves the cell constructions compose.
//
// Conventions:
//   - A k x n matrix represents a point of the Grassmannian by the span of
//     its rows; Plücker coordinate <I> is the maximal minor on the sorted
//     column set I, keyed by bitmask.
//   - "Totally nonnegative / positive" always refers to the maximal minors
//     up to one global sign flip, matching the quotient by row operations.
//   - Sample generators are algebraic: moment-curve matrices for external
//     data (all minors of all orders positive for increasing parameters) and
//     a rectangular planar-network point for the big cell, whose maximal
//     minors are weight sums over noncrossing path families and hence
//     positive for positive weights.

#include <map>
#include <vector>

#include "amplikit/combi.hpp"
#include "amplikit/matrix.hpp"
#include "amplikit/rng.hpp"

namespace amplikit {

// All maximal minors of m, keyed by column marker mask (columns are markers
// 1..cols).  k = 0 yields {empty mask -> 1}.
std::map<Mask, Rat> plucker_coordinates(const Mat& m);

enum class PositivityClass {
  zero,                 // every maximal minor vanishes
  totally_positive,     // one global sign makes every maximal minor positive
  totally_nonnegative,  // one global sign makes them all >= 0, some zero
  mixed,                // genuinely mixed signs
};

PositivityClass positivity_class(const Mat& m);

const char* positivity_class_name(PositivityClass cls);

// Consecutive-window criterion for total positivity of a rectangular matrix
// in the strong sense (minors of every order positive): it suffices to check
// all minors on consecutive row and column windows.
bool is_totally_positive(const Mat& m);

// n x width moment-curve matrix: row j is (1, t_j, t_j^2, ..., t_j^{width-1}).
Mat moment_curve_matrix(const std::vector<Rat>& t, std::size_t width);

// External-data samples (n x (k+4), all minors positive).  The default uses
// t_j = j; the random variant draws increasing rational parameters.
Mat default_external_data(int n, int k);
Mat random_external_data(int n, int k, RngStream& rng);

// Big-cell point of the k x n nonnegative Grassmannian from the rectangular
// planar network.  `weights` packs the (k-1) x (n-k) interior drop weights
// row-major, then the n-k exit weights: k(n-k) positive values in total.
Mat big_cell_point(int k, int n, const std::vector<Rat>& weights);
Mat random_big_cell_point(int k, int n, RngStream& rng);
Mat unit_big_cell_point(int k, int n);

// --- elementary moves ---------------------------------------------------

// Columns (v_1,...,v_n) -> ((-1)^{k-1} v_n, v_1, ..., v_{n-1}).
Mat cyclic_shift(const Mat& m);

// Reverses the column order and scales the first row by (-1)^{binom(k,2)},
// which restores all maximal minors to a common sign.
Mat reflect(const Mat& m);

// Inserts a zero column so that it becomes column `marker` (1-based) of the
// result; old columns at >= marker shift right.  marker may be cols+1.
Mat insert_zero_column(const Mat& m, int marker);

// Prepends a new first row with a 1 in column `marker` and flips the sign of
// all columns left of it, keeping maximal minors nonnegative.
Mat prepend_unit_row(const Mat& m, int marker);

// Column shear toward the successor: column at position dst += t * column at
// position src (0-based positions).
Mat add_column_multiple(const Mat& m, std::size_t src, std::size_t dst,
                        const Rat& t);

// Named elementary operation on a labeled matrix, as exposed by the CLI:
//   op in {"cyc", "refl", "pre", "inc", "x", "y"}; `index` is the marker
//   argument for pre/inc/x/y; `t` is the shear amount for x/y.
// x_i shears column succ(i) by t * column i; y_i shears column i by
// t * column succ(i); succ is taken inside the label list (cyclically).
LabeledMat apply_matrix_op(const LabeledMat& m, const std::string& op,
                           int index, const Rat& t);

}  // namespace amplikit

#endif  // AMPLIKIT_GRASSMANN_HPP
