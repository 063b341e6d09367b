#ifndef AMPLIKIT_PANEL_HPP
#define AMPLIKIT_PANEL_HPP

// Value panels: batches of random exact matrices on which functionaries are
// compared numerically.  Two distinct rational functions of the maximal
// minors agree on a dozen independent random rational matrices only with
// vanishing probability, so panel equality is the working test for
// identities that hold on the Grassmannian (i.e. modulo Plücker relations)
// without holding in the free ring.  Callers re-verify on a fresh panel
// (different stream) before trusting an equality.

#include <cstdint>
#include <vector>

#include "amplikit/functionary.hpp"
#include "amplikit/matrix.hpp"
#include "amplikit/rng.hpp"

namespace amplikit {

class ValuePanel {
 public:
  // `count` random rows x cols matrices with nonzero rational entries.
  static ValuePanel make(std::size_t rows, std::size_t cols,
                         std::uint64_t seed, std::uint64_t stream,
                         std::size_t count = 12);

  const std::vector<Mat>& points() const { return points_; }

  // Evaluates the expression at every panel point with Plücker brackets.
  // DivisionByZero propagates (the caller resamples with another stream).
  std::vector<Rat> values(const ExprPtr& e) const;

  bool equal(const ExprPtr& a, const ExprPtr& b) const;
  bool all_zero(const ExprPtr& e) const;

 private:
  std::vector<Mat> points_;
};

// Panel equality with automatic resampling on unlucky zero denominators and
// a confirming run on a second independent panel.
bool verify_on_panels(const ExprPtr& a, const ExprPtr& b, std::size_t rows,
                      std::size_t cols, std::uint64_t seed);

}  // namespace amplikit

#endif  // AMPLIKIT_PANEL_HPP
