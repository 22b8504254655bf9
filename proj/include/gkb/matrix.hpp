// Small dense matrices over F_q.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gkb/field.hpp"

namespace gkb {

constexpr int kMaxN = 6;

struct Mat {
  uint8_t rows = 0, cols = 0;
  std::array<Elem, kMaxN * kMaxN> e{};

  Mat() = default;
  Mat(int r, int c) : rows(static_cast<uint8_t>(r)), cols(static_cast<uint8_t>(c)) {}

  Elem& at(int i, int j) { return e[i * cols + j]; }
  Elem at(int i, int j) const { return e[i * cols + j]; }
  int n() const { return rows; }
  bool square() const { return rows == cols; }

  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const;
  // Index in [0, q^(rows*cols)) reading entries row-major, most significant first.
  uint64_t code(int q) const;
  static Mat from_code(int rows, int cols, int q, uint64_t code);
};

Mat identity(int n);
Mat zero_mat(int r, int c);
Mat mat_from_rows(const std::vector<std::vector<int>>& rows);
Mat scalar_mat(int n, Elem a);

Mat mat_mul(const FieldContext& F, const Mat& A, const Mat& B);
Mat mat_add(const FieldContext& F, const Mat& A, const Mat& B);
Mat mat_sub(const FieldContext& F, const Mat& A, const Mat& B);
Mat mat_neg(const FieldContext& F, const Mat& A);
Mat mat_scale(const FieldContext& F, const Mat& A, Elem s);
Mat transpose(const Mat& A);
// Throws std::domain_error on a singular matrix.
Mat mat_inv(const FieldContext& F, const Mat& A);
bool try_inv(const FieldContext& F, const Mat& A, Mat& out);
Mat transpose_inverse(const FieldContext& F, const Mat& A);
Elem det(const FieldContext& F, const Mat& A);
Elem trace(const FieldContext& F, const Mat& A);
int rank(const FieldContext& F, Mat A);
bool is_invertible(const FieldContext& F, const Mat& A);

Mat get_block(const Mat& A, int r0, int c0, int rows, int cols);
void set_block(Mat& A, int r0, int c0, const Mat& B);
Mat block_diag(const std::vector<Mat>& blocks);
// Anti-diagonal block matrix [[0, top_right], [bottom_left, 0]].
Mat antidiag_blocks(const Mat& top_right, const Mat& bottom_left);

// Characteristic polynomial det(xI - A), monic of degree n (Hessenberg reduction).
PolyFq charpoly(const FieldContext& F, const Mat& A);
Mat poly_at_matrix(const FieldContext& F, const PolyFq& f, const Mat& A);
Mat companion(const FieldContext& F, const PolyFq& f);

std::string mat_string(const FieldContext& F, const Mat& A);

}  // namespace gkb
