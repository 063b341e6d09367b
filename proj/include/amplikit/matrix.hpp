#ifndef AMPLIKIT_MATRIX_HPP
#define AMPLIKIT_MATRIX_HPP

// Dense matrices over exact rationals.
//
// Row-major storage; eliminations pivot on the first nonzero entry, so
// determinants, ranks and reduced forms are exact.  Sizes here are tiny
// (rows <= 8, columns <= 16), so plain Gaussian elimination over mpq is both
// simple and fast enough for every enumeration in the test-suites.
//
// A LabeledMat pairs a matrix with the strictly increasing list of 1-based
// ambient markers its columns represent; cells of the recursion live on
// proper marker subsets and the labels drive how their matrices embed.

#include <cstddef>
#include <vector>

#include "amplikit/rational.hpp"

namespace amplikit {

class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

  static Mat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Mat operator*(const Mat& rhs) const;
  Mat transpose() const;

  // Exact determinant (square matrices only).
  Rat det() const;

  std::size_t rank() const;

  // Reduced row echelon form.
  Mat rref() const;

  // Extracts the submatrix on the given 0-based row/column positions, in the
  // order given (no sorting; the caller owns any sign bookkeeping).
  Mat submatrix(const std::vector<std::size_t>& row_pos,
                const std::vector<std::size_t>& col_pos) const;

  // Determinant of the square submatrix using all rows and the given
  // 0-based column positions in the order given.
  Rat maximal_minor(const std::vector<std::size_t>& col_pos) const;

  // Stacks `other` below this matrix (column counts must match).
  Mat stack(const Mat& other) const;

  bool operator==(const Mat&) const = default;

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> data_;
};

struct LabeledMat {
  std::vector<int> labels;  // strictly increasing 1-based markers
  Mat entries;              // entries.cols() == labels.size()

  LabeledMat() = default;
  LabeledMat(std::vector<int> l, Mat m) : labels(std::move(l)), entries(std::move(m)) {}

  // Matrix on markers 1..cols.
  static LabeledMat on_full_markers(Mat m);

  // 0-based column position of `marker`, or -1 when absent.
  int position_of(int marker) const;
};

}  // namespace amplikit

#endif  // AMPLIKIT_MATRIX_HPP
