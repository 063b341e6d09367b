#ifndef AMPLIKIT_POLY_HPP
#define AMPLIKIT_POLY_HPP

// Sparse Laurent polynomials over the free commutative ring generated by
// bracket symbols.  Brackets are interned as variables keyed by their sorted
// index list; antisymmetry is applied at interning time (sign from sorting,
// zero on repeats), after which no further relations are imposed.  This is
// deliberately the *free* ring: two expressions equal here are equal as
// written, not merely equal modulo Plücker relations (panels handle the
// latter).  The main consumers are monomial extraction and exact-division
// steps in the variable-promotion machinery.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amplikit/functionary.hpp"
#include "amplikit/rational.hpp"

namespace amplikit {

class BracketTable {
 public:
  // Interns a bracket leaf: returns {variable id, sign}; sign is 0 when the
  // indices repeat (the bracket is identically zero).
  std::pair<int, int> intern(const std::vector<int>& indices);
  // Interns an already-sorted duplicate-free index list.
  int intern_sorted(const std::vector<int>& sorted);
  const std::vector<int>& indices_of(int id) const;
  std::size_t size() const { return names_.size(); }

 private:
  std::map<std::vector<int>, int> ids_;
  std::vector<std::vector<int>> names_;
};

// (variable id, nonzero exponent), strictly increasing in the id.
using Monomial = std::vector<std::pair<int, int>>;

Monomial monomial_mul(const Monomial& a, const Monomial& b);
Monomial monomial_inverse(const Monomial& m);

class Poly {
 public:
  Poly() = default;
  static Poly constant(const Rat& value);
  static Poly variable(int id, int exponent = 1);
  static Poly monomial_term(const Monomial& m, const Rat& coeff);

  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly operator-() const;
  Poly scaled(const Rat& factor) const;
  bool operator==(const Poly& other) const { return terms_ == other.terms_; }
  bool operator!=(const Poly& other) const { return !(*this == other); }

  // Multiplies every term by the (Laurent) monomial.
  Poly times_monomial(const Monomial& m, const Rat& coeff = 1) const;

  // Smallest exponent of the variable across all terms (0 if absent from
  // some term); nullopt on the zero polynomial.
  std::optional<int> min_exponent(int var) const;

  // Exact division: returns quotient iff divisor * quotient == this.
  // Handles monomial divisors directly and falls back to long division by
  // the divisor's leading term for general ones.
  std::optional<Poly> divided_exactly_by(const Poly& divisor) const;

  void add_term(const Monomial& m, const Rat& coeff);

 private:
  std::map<Monomial, Rat> terms_;
};

struct NonMonomialDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lowers an expression to the free ring.  Quotient nodes require the
// denominator to lower to a single term (inverted via Laurent exponents);
// otherwise NonMonomialDenominator is thrown.
Poly expr_to_poly(const ExprPtr& e, BracketTable& table);

// Rebuilds an expression: sum of scalar * bracket^exponents, with negative
// exponents gathered in a denominator product.
ExprPtr poly_to_expr(const Poly& p, const BracketTable& table);

// True iff the two expressions are identical elements of the free ring
// (stronger than agreeing on all matrices).
bool equal_in_free_ring(const ExprPtr& a, const ExprPtr& b);

}  // namespace amplikit

#endif  // AMPLIKIT_POLY_HPP
