#include "amplikit/matrix.hpp"

#include <stdexcept>

namespace amplikit {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::operator*(const Mat& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape");
  Mat out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& lhs_ik = at(i, k);
      if (lhs_ik == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        out.at(i, j) += lhs_ik * rhs.at(k, j);
      }
    }
  }
  return out;
}

Mat Mat::transpose() const {
  Mat out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

Rat Mat::det() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square");
  Mat work = *this;
  const std::size_t n = rows_;
  Rat result = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work.at(pivot, col) == 0) ++pivot;
    if (pivot == n) return Rat(0);
    if (pivot != col) {
      for (std::size_t j = col; j < n; ++j) {
        std::swap(work.at(pivot, j), work.at(col, j));
      }
      result = -result;
    }
    const Rat pivot_value = work.at(col, col);
    result *= pivot_value;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (work.at(row, col) == 0) continue;
      Rat factor = work.at(row, col) / pivot_value;
      for (std::size_t j = col; j < n; ++j) {
        work.at(row, j) -= factor * work.at(col, j);
      }
    }
  }
  return result;
}

std::size_t Mat::rank() const {
  Mat work = *this;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows_ && work.at(pivot, col) == 0) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols_; ++j) {
        std::swap(work.at(pivot, j), work.at(rank, j));
      }
    }
    const Rat pivot_value = work.at(rank, col);
    for (std::size_t row = rank + 1; row < rows_; ++row) {
      if (work.at(row, col) == 0) continue;
      Rat factor = work.at(row, col) / pivot_value;
      for (std::size_t j = col; j < cols_; ++j) {
        work.at(row, j) -= factor * work.at(rank, j);
      }
    }
    ++rank;
  }
  return rank;
}

Mat Mat::rref() const {
  Mat work = *this;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols_ && lead < rows_; ++col) {
    std::size_t pivot = lead;
    while (pivot < rows_ && work.at(pivot, col) == 0) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != lead) {
      for (std::size_t j = 0; j < cols_; ++j) {
        std::swap(work.at(pivot, j), work.at(lead, j));
      }
    }
    const Rat pivot_value = work.at(lead, col);
    for (std::size_t j = 0; j < cols_; ++j) work.at(lead, j) /= pivot_value;
    for (std::size_t row = 0; row < rows_; ++row) {
      if (row == lead || work.at(row, col) == 0) continue;
      Rat factor = work.at(row, col);
      for (std::size_t j = 0; j < cols_; ++j) {
        work.at(row, j) -= factor * work.at(lead, j);
      }
    }
    ++lead;
  }
  return work;
}

Mat Mat::submatrix(const std::vector<std::size_t>& row_pos,
                   const std::vector<std::size_t>& col_pos) const {
  Mat out(row_pos.size(), col_pos.size());
  for (std::size_t i = 0; i < row_pos.size(); ++i) {
    for (std::size_t j = 0; j < col_pos.size(); ++j) {
      out.at(i, j) = at(row_pos[i], col_pos[j]);
    }
  }
  return out;
}

Rat Mat::maximal_minor(const std::vector<std::size_t>& col_pos) const {
  if (col_pos.size() != rows_) {
    throw std::invalid_argument("maximal minor needs rows() columns");
  }
  std::vector<std::size_t> all_rows(rows_);
  for (std::size_t i = 0; i < rows_; ++i) all_rows[i] = i;
  return submatrix(all_rows, col_pos).det();
}

Mat Mat::stack(const Mat& other) const {
  if (cols_ != other.cols_) throw std::invalid_argument("stack shape");
  Mat out(rows_ + other.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
  }
  for (std::size_t i = 0; i < other.rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out.at(rows_ + i, j) = other.at(i, j);
    }
  }
  return out;
}

LabeledMat LabeledMat::on_full_markers(Mat m) {
  LabeledMat out;
  out.labels.resize(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    out.labels[j] = static_cast<int>(j) + 1;
  }
  out.entries = std::move(m);
  return out;
}

int LabeledMat::position_of(int marker) const {
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] == marker) return static_cast<int>(j);
  }
  return -1;
}

}  // namespace amplikit
