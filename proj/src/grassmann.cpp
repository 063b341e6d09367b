#include "amplikit/grassmann.hpp"

#include <stdexcept>
#include <string>

namespace amplikit {

std::map<Mask, Rat> plucker_coordinates(const Mat& m) {
  const int n = static_cast<int>(m.cols());
  const int k = static_cast<int>(m.rows());
  std::map<Mask, Rat> out;
  for (const auto& index_set : subsets(n, k)) {
    std::vector<std::size_t> col_pos;
    col_pos.reserve(index_set.size());
    for (int marker : index_set) {
      col_pos.push_back(static_cast<std::size_t>(marker - 1));
    }
    out[indices_to_mask(index_set)] = m.maximal_minor(col_pos);
  }
  return out;
}

PositivityClass positivity_class(const Mat& m) {
  int reference_sign = 0;
  bool saw_zero = false;
  for (const auto& [mask, value] : plucker_coordinates(m)) {
    const int s = rat_sign(value);
    if (s == 0) {
      saw_zero = true;
    } else if (reference_sign == 0) {
      reference_sign = s;
    } else if (s != reference_sign) {
      return PositivityClass::mixed;
    }
  }
  if (reference_sign == 0) return PositivityClass::zero;
  return saw_zero ? PositivityClass::totally_nonnegative
                  : PositivityClass::totally_positive;
}

const char* positivity_class_name(PositivityClass cls) {
  switch (cls) {
    case PositivityClass::zero:
      return "zero";
    case PositivityClass::totally_positive:
      return "totally_positive";
    case PositivityClass::totally_nonnegative:
      return "totally_nonnegative";
    case PositivityClass::mixed:
      return "mixed";
  }
  return "unknown";
}

bool is_totally_positive(const Mat& m) {
  const std::size_t max_order = std::min(m.rows(), m.cols());
  for (std::size_t order = 1; order <= max_order; ++order) {
    for (std::size_t top = 0; top + order <= m.rows(); ++top) {
      for (std::size_t left = 0; left + order <= m.cols(); ++left) {
        std::vector<std::size_t> row_pos(order), col_pos(order);
        for (std::size_t s = 0; s < order; ++s) {
          row_pos[s] = top + s;
          col_pos[s] = left + s;
        }
        if (rat_sign(m.submatrix(row_pos, col_pos).det()) <= 0) return false;
      }
    }
  }
  return true;
}

Mat moment_curve_matrix(const std::vector<Rat>& t, std::size_t width) {
  Mat m(t.size(), width);
  for (std::size_t row = 0; row < t.size(); ++row) {
    Rat power = 1;
    for (std::size_t col = 0; col < width; ++col) {
      m.at(row, col) = power;
      power *= t[row];
    }
  }
  return m;
}

Mat default_external_data(int n, int k) {
  std::vector<Rat> t;
  t.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) t.emplace_back(j);
  return moment_curve_matrix(t, static_cast<std::size_t>(k + 4));
}

Mat random_external_data(int n, int k, RngStream& rng) {
  return moment_curve_matrix(
      rng.next_increasing_rationals(static_cast<std::size_t>(n)),
      static_cast<std::size_t>(k + 4));
}

Mat big_cell_point(int k, int n, const std::vector<Rat>& weights) {
  const int cols_free = n - k;
  if (static_cast<int>(weights.size()) != k * cols_free) {
    throw std::invalid_argument("big cell point needs k(n-k) weights");
  }
  // weights layout: drop weight w(r, c) for r in 1..k-1, c in 1..n-k
  // (row-major), followed by exit weights u(1..n-k).
  auto drop = [&](int r, int c) -> const Rat& {
    return weights[static_cast<std::size_t>((r - 1) * cols_free + (c - 1))];
  };
  auto exit_weight = [&](int c) -> const Rat& {
    return weights[static_cast<std::size_t>((k - 1) * cols_free + (c - 1))];
  };

  Mat m(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
  for (int i = 1; i <= k; ++i) {
    m.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i - 1)) = 1;
  }
  for (int j = 1; j <= cols_free; ++j) {
    // paths[r][c]: weighted count of monotone drop paths from row r entering
    // at column c down to the exit row, never moving left, exiting at j.
    std::vector<std::vector<Rat>> paths(
        static_cast<std::size_t>(k + 1),
        std::vector<Rat>(static_cast<std::size_t>(j + 1), Rat(0)));
    for (int c = 1; c <= j; ++c) paths[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] = 1;
    for (int r = k - 1; r >= 1; --r) {
      // suffix accumulation over c' >= c of drop(r, c') * paths[r+1][c'].
      Rat suffix = 0;
      for (int c = j; c >= 1; --c) {
        suffix += drop(r, c) * paths[static_cast<std::size_t>(r + 1)][static_cast<std::size_t>(c)];
        paths[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = suffix;
      }
    }
    for (int i = 1; i <= k; ++i) {
      Rat value = exit_weight(j) * paths[static_cast<std::size_t>(i)][1];
      if ((k - i) % 2 == 1) value = -value;
      m.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(k + j - 1)) = value;
    }
  }
  return m;
}

Mat random_big_cell_point(int k, int n, RngStream& rng) {
  std::vector<Rat> weights;
  weights.reserve(static_cast<std::size_t>(k * (n - k)));
  for (int i = 0; i < k * (n - k); ++i) {
    weights.push_back(rng.next_positive_rational());
  }
  return big_cell_point(k, n, weights);
}

Mat unit_big_cell_point(int k, int n) {
  return big_cell_point(k, n, std::vector<Rat>(static_cast<std::size_t>(k * (n - k)), Rat(1)));
}

Mat cyclic_shift(const Mat& m) {
  const std::size_t n = m.cols();
  const std::size_t k = m.rows();
  Mat out(k, n);
  const int sign = (k >= 1 && (k - 1) % 2 == 1) ? -1 : 1;
  for (std::size_t i = 0; i < k; ++i) {
    out.at(i, 0) = sign * m.at(i, n - 1);
    for (std::size_t j = 1; j < n; ++j) out.at(i, j) = m.at(i, j - 1);
  }
  return out;
}

Mat reflect(const Mat& m) {
  const std::size_t n = m.cols();
  const std::size_t k = m.rows();
  Mat out(k, n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = m.at(i, n - 1 - j);
  }
  if (k >= 2 && (k * (k - 1) / 2) % 2 == 1) {
    for (std::size_t j = 0; j < n; ++j) out.at(0, j) = -out.at(0, j);
  }
  return out;
}

Mat insert_zero_column(const Mat& m, int marker) {
  if (marker < 1 || marker > static_cast<int>(m.cols()) + 1) {
    throw std::invalid_argument("zero-column position out of range");
  }
  Mat out(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::size_t dst = (static_cast<int>(j) + 1 >= marker) ? j + 1 : j;
      out.at(i, dst) = m.at(i, j);
    }
  }
  return out;
}

Mat prepend_unit_row(const Mat& m, int marker) {
  if (marker < 1 || marker > static_cast<int>(m.cols())) {
    throw std::invalid_argument("unit-row position out of range");
  }
  Mat out(m.rows() + 1, m.cols());
  out.at(0, static_cast<std::size_t>(marker - 1)) = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const bool negate = static_cast<int>(j) + 1 < marker;
      out.at(i + 1, j) = negate ? Rat(-m.at(i, j)) : m.at(i, j);
    }
  }
  return out;
}

Mat add_column_multiple(const Mat& m, std::size_t src, std::size_t dst,
                        const Rat& t) {
  Mat out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out.at(i, dst) += t * m.at(i, src);
  }
  return out;
}

LabeledMat apply_matrix_op(const LabeledMat& m, const std::string& op,
                           int index, const Rat& t) {
  LabeledMat out = m;
  if (op == "cyc") {
    out.entries = cyclic_shift(m.entries);
    return out;
  }
  if (op == "refl") {
    out.entries = reflect(m.entries);
    return out;
  }
  if (op == "pre") {
    // On a full marker range 1..m the new marker takes the name `index` and
    // later markers shift up by one; on a proper subset, or for a marker
    // beyond the positional range, the new marker must fill a gap (possibly
    // at either end) and existing names stay put.
    bool full_range = true;
    for (std::size_t j = 0; j < m.labels.size(); ++j) {
      if (m.labels[j] != static_cast<int>(j) + 1) full_range = false;
    }
    if (index > static_cast<int>(m.labels.size()) + 1) full_range = false;
    std::vector<int> labels;
    int insert_pos = 0;
    if (full_range) {
      for (int label : m.labels) labels.push_back(label >= index ? label + 1 : label);
      insert_pos = index - 1;
    } else {
      if (m.position_of(index) >= 0) {
        throw std::invalid_argument("pre: marker already present");
      }
      labels = m.labels;
      while (insert_pos < static_cast<int>(labels.size()) &&
             labels[static_cast<std::size_t>(insert_pos)] < index) {
        ++insert_pos;
      }
    }
    labels.insert(labels.begin() + insert_pos, index);
    out.labels = labels;
    out.entries = insert_zero_column(m.entries, insert_pos + 1);
    return out;
  }
  if (op == "inc") {
    const int pos = m.position_of(index);
    if (pos < 0) throw std::invalid_argument("inc: marker not present");
    out.entries = prepend_unit_row(m.entries, pos + 1);
    return out;
  }
  if (op == "x" || op == "y") {
    const int pos = m.position_of(index);
    if (pos < 0) throw std::invalid_argument("shear: marker not present");
    const std::size_t succ =
        (static_cast<std::size_t>(pos) + 1) % m.labels.size();
    if (op == "x") {
      out.entries = add_column_multiple(m.entries, static_cast<std::size_t>(pos), succ, t);
    } else {
      out.entries = add_column_multiple(m.entries, succ, static_cast<std::size_t>(pos), t);
    }
    return out;
  }
  throw std::invalid_argument("unknown matrix operation: " + op);
}

}  // namespace amplikit
