#include "amplikit/panel.hpp"

namespace amplikit {

ValuePanel ValuePanel::make(std::size_t rows, std::size_t cols,
                            std::uint64_t seed, std::uint64_t stream,
                            std::size_t count) {
  ValuePanel panel;
  RngStream rng(seed, stream);
  for (std::size_t p = 0; p < count; ++p) {
    Mat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        m.at(r, c) = rng.next_signed_rational();
      }
    }
    panel.points_.push_back(std::move(m));
  }
  return panel;
}

std::vector<Rat> ValuePanel::values(const ExprPtr& e) const {
  std::vector<Rat> out;
  out.reserve(points_.size());
  for (const auto& m : points_) {
    out.push_back(eval_expr(e, plucker_bracket_fn(m)));
  }
  return out;
}

bool ValuePanel::equal(const ExprPtr& a, const ExprPtr& b) const {
  for (const auto& m : points_) {
    auto fn = plucker_bracket_fn(m);
    if (eval_expr(a, fn) != eval_expr(b, fn)) return false;
  }
  return true;
}

bool ValuePanel::all_zero(const ExprPtr& e) const {
  for (const auto& m : points_) {
    if (eval_expr(e, plucker_bracket_fn(m)) != 0) return false;
  }
  return true;
}

bool verify_on_panels(const ExprPtr& a, const ExprPtr& b, std::size_t rows,
                      std::size_t cols, std::uint64_t seed) {
  for (std::uint64_t run = 0; run < 2; ++run) {
    bool done = false;
    for (std::uint64_t attempt = 0; attempt < 8 && !done; ++attempt) {
      try {
        ValuePanel panel =
            ValuePanel::make(rows, cols, seed, 101 + 2 * run + 100 * attempt);
        if (!panel.equal(a, b)) return false;
        done = true;
      } catch (const DivisionByZero&) {
        // Resample: a random panel point hit a pole of a or b.
      }
    }
    if (!done) {
      throw DivisionByZero("panel evaluation kept hitting zero denominators");
    }
  }
  return true;
}

}  // namespace amplikit
