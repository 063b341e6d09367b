#ifndef AMPLIKIT_FUNCTIONARY_HPP
#define AMPLIKIT_FUNCTIONARY_HPP

// Rational expressions in formal determinant brackets.
//
// A functionary is a DAG whose leaves are brackets <i1 i2 i3 i4> (or general
// k-index brackets) and whose internal nodes are sums, products, quotients,
// scalars, and chain nodes.  The same expression can be evaluated with
// different bracket interpretations:
//   - Plücker brackets: maximal minors of one matrix,
//   - twistor brackets: determinants of a row span stacked over four rows of
//     an external data matrix.
// Chain nodes hold the clause notation <C0 | p1 | f1 | p2 | ... | Cend>
// (3-index outer clauses, 2-index inner clauses, alternating movable pairs
// and fixed pairs) and expand to the standard signed 2^s-term polynomial.
//
// Brackets are antisymmetric: evaluation sorts the indices and applies the
// permutation sign; repeated indices give zero.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "amplikit/matrix.hpp"
#include "amplikit/rational.hpp"

namespace amplikit {

enum class ExprKind { scalar, bracket, chain, sum, product, quotient };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  ExprKind kind = ExprKind::scalar;
  Rat scalar_value = 0;                   // scalar nodes
  std::vector<int> bracket;               // bracket nodes, indices as written
  std::vector<std::vector<int>> clauses;  // chain nodes
  std::vector<ExprPtr> children;          // sum/product (n-ary), quotient (2)
};

ExprPtr ex_scalar(const Rat& value);
ExprPtr ex_bracket(std::vector<int> indices);
ExprPtr ex_chain(std::vector<std::vector<int>> clauses);
ExprPtr ex_sum(std::vector<ExprPtr> children);     // flattens nested sums
ExprPtr ex_product(std::vector<ExprPtr> children); // flattens, folds scalars
ExprPtr ex_quotient(ExprPtr numerator, ExprPtr denominator);
ExprPtr ex_neg(const ExprPtr& e);

// The chain <C0|p1|f1|...|ps|Cend> as an explicit signed sum of bracket
// products: sum over assignments t in {0,1}^s of
//   (-1)^{sum t}  <C0 p1[t1]> <p1[1-t1] f1 p2[t2]> ... <ps[1-ts] Cend>.
// A single-clause chain is just that bracket.
ExprPtr expand_chain(const std::vector<std::vector<int>>& clauses);

// --- evaluation -----------------------------------------------------------

using BracketFn = std::function<Rat(const std::vector<int>&)>;

struct DivisionByZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluates with an arbitrary bracket interpretation (memoized per call).
Rat eval_expr(const ExprPtr& e, const BracketFn& bracket_fn);

// Plücker interpretation: brackets are maximal minors of m (index count must
// equal m.rows()); sorts indices, applies the sign, caches by sorted set.
BracketFn plucker_bracket_fn(const Mat& m);

// Twistor interpretation: <<I>> = det of Y's rows stacked over the four
// Z-rows indexed by I (in the order given).  Cached by sorted index set.
BracketFn twistor_bracket_fn(const Mat& y, const Mat& z);

// Twistor coordinate of the pair (Y, Z) directly.
Rat eval_twistor(const Mat& y, const Mat& z, const std::vector<int>& rows);

// Same value through the cell matrix: <<I>> of (C Z, Z) equals the sum over
// row sets J disjoint from I of <J>_C * det(Z on rows J sorted then I).
Rat eval_twistor_cauchy_binet(const Mat& c, const Mat& z,
                              const std::vector<int>& rows);

// --- degrees ----------------------------------------------------------------

struct ImpureExpression : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Multidegree: marker -> degree.  Sums require all children to agree
// (otherwise ImpureExpression); quotients subtract.
std::map<int, int> multidegree(const ExprPtr& e);
int degree_in(const ExprPtr& e, int marker);

// --- index relabeling -------------------------------------------------------

ExprPtr map_indices(const ExprPtr& e, const std::function<int(int)>& fn);
// i -> i-1 cyclically on markers 1..n.
ExprPtr cyc_star(const ExprPtr& e, int n);
// i -> i+1 cyclically on markers 1..n.
ExprPtr cyc_star_inv(const ExprPtr& e, int n);
// i -> n+1-i.
ExprPtr refl_star(const ExprPtr& e, int n);
// CLI entry point: op is "cyc_star_inv" or "refl_star".
ExprPtr pullback_expr(const ExprPtr& e, const std::string& op, int n);

// --- text forms -------------------------------------------------------------

// S-expression grammar:
//   expr := rational | (tw i j k l ...) | (chain (i j k) (i j) ... (i j k))
//         | (add expr...) | (sub expr expr) | (mul expr...)
//         | (div expr expr) | (neg expr)
std::string to_sexpr(const ExprPtr& e);
ExprPtr parse_sexpr(const std::string& text);

// Compact bracket notation with one character per marker (1-9, then A, B,
// ...), chains printed with clause separators: <F89|21|34|56|89F>.
std::string to_bracket_string(const ExprPtr& e);
char marker_char(int marker);

}  // namespace amplikit

#endif  // AMPLIKIT_FUNCTIONARY_HPP
