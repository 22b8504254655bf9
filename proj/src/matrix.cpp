#include "gkb/matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace gkb {

bool Mat::operator==(const Mat& o) const {
  if (rows != o.rows || cols != o.cols) return false;
  for (int i = 0; i < rows * cols; ++i) {
    if (e[i] != o.e[i]) return false;
  }
  return true;
}

bool Mat::operator<(const Mat& o) const {
  if (rows != o.rows) return rows < o.rows;
  if (cols != o.cols) return cols < o.cols;
  for (int i = 0; i < rows * cols; ++i) {
    if (e[i] != o.e[i]) return e[i] < o.e[i];
  }
  return false;
}

uint64_t Mat::code(int q) const {
  uint64_t c = 0;
  for (int i = 0; i < rows * cols; ++i) c = c * q + e[i];
  return c;
}

Mat Mat::from_code(int rows, int cols, int q, uint64_t code) {
  Mat A(rows, cols);
  for (int i = rows * cols - 1; i >= 0; --i) {
    A.e[i] = static_cast<Elem>(code % q);
    code /= q;
  }
  return A;
}

Mat identity(int n) {
  Mat A(n, n);
  for (int i = 0; i < n; ++i) A.at(i, i) = 1;
  return A;
}

Mat zero_mat(int r, int c) { return Mat(r, c); }

Mat scalar_mat(int n, Elem a) {
  Mat A(n, n);
  for (int i = 0; i < n; ++i) A.at(i, i) = a;
  return A;
}

Mat mat_from_rows(const std::vector<std::vector<int>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  if (r > kMaxN || c > kMaxN) throw std::invalid_argument("matrix too large");
  Mat A(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) A.at(i, j) = static_cast<Elem>(rows[i][j]);
  }
  return A;
}

Mat mat_mul(const FieldContext& F, const Mat& A, const Mat& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch in product");
  Mat C(A.rows, B.cols);
  const int q = F.q();
  const Elem* add = F.add_table();
  const Elem* mul = F.mul_table();
  for (int i = 0; i < A.rows; ++i) {
    for (int k = 0; k < A.cols; ++k) {
      Elem a = A.at(i, k);
      if (a == 0) continue;
      const Elem* mrow = mul + a * q;
      for (int j = 0; j < B.cols; ++j) {
        Elem& c = C.e[i * C.cols + j];
        c = add[c * q + mrow[B.at(k, j)]];
      }
    }
  }
  return C;
}

Mat mat_add(const FieldContext& F, const Mat& A, const Mat& B) {
  if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("shape mismatch in sum");
  Mat C(A.rows, A.cols);
  for (int i = 0; i < A.rows * A.cols; ++i) C.e[i] = F.add(A.e[i], B.e[i]);
  return C;
}

Mat mat_sub(const FieldContext& F, const Mat& A, const Mat& B) {
  if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("shape mismatch in sum");
  Mat C(A.rows, A.cols);
  for (int i = 0; i < A.rows * A.cols; ++i) C.e[i] = F.sub(A.e[i], B.e[i]);
  return C;
}

Mat mat_neg(const FieldContext& F, const Mat& A) {
  Mat C = A;
  for (int i = 0; i < A.rows * A.cols; ++i) C.e[i] = F.neg(A.e[i]);
  return C;
}

Mat mat_scale(const FieldContext& F, const Mat& A, Elem s) {
  Mat C = A;
  for (int i = 0; i < A.rows * A.cols; ++i) C.e[i] = F.mul(A.e[i], s);
  return C;
}

Mat transpose(const Mat& A) {
  Mat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  }
  return T;
}

bool try_inv(const FieldContext& F, const Mat& A, Mat& out) {
  if (!A.square()) throw std::invalid_argument("inverse of a non-square matrix");
  const int n = A.rows;
  Mat M = A;
  out = identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (M.at(r, col) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return false;
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(M.at(piv, j), M.at(col, j));
        std::swap(out.at(piv, j), out.at(col, j));
      }
    }
    Elem s = F.inv(M.at(col, col));
    for (int j = 0; j < n; ++j) {
      M.at(col, j) = F.mul(M.at(col, j), s);
      out.at(col, j) = F.mul(out.at(col, j), s);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Elem f = M.at(r, col);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        M.at(r, j) = F.sub(M.at(r, j), F.mul(f, M.at(col, j)));
        out.at(r, j) = F.sub(out.at(r, j), F.mul(f, out.at(col, j)));
      }
    }
  }
  return true;
}

Mat mat_inv(const FieldContext& F, const Mat& A) {
  Mat out;
  if (!try_inv(F, A, out)) throw std::domain_error("singular matrix has no inverse");
  return out;
}

Mat transpose_inverse(const FieldContext& F, const Mat& A) { return transpose(mat_inv(F, A)); }

Elem det(const FieldContext& F, const Mat& A) {
  if (!A.square()) throw std::invalid_argument("determinant of a non-square matrix");
  const int n = A.rows;
  Mat M = A;
  Elem d = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (M.at(r, col) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(M.at(piv, j), M.at(col, j));
      d = F.neg(d);
    }
    Elem pv = M.at(col, col);
    d = F.mul(d, pv);
    Elem s = F.inv(pv);
    for (int r = col + 1; r < n; ++r) {
      Elem f = F.mul(M.at(r, col), s);
      if (f == 0) continue;
      for (int j = col; j < n; ++j) M.at(r, j) = F.sub(M.at(r, j), F.mul(f, M.at(col, j)));
    }
  }
  return d;
}

Elem trace(const FieldContext& F, const Mat& A) {
  Elem t = 0;
  for (int i = 0; i < A.rows; ++i) t = F.add(t, A.at(i, i));
  return t;
}

int rank(const FieldContext& F, Mat M) {
  const int R = M.rows, C = M.cols;
  int r = 0;
  for (int col = 0; col < C && r < R; ++col) {
    int piv = -1;
    for (int i = r; i < R; ++i) {
      if (M.at(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = col; j < C; ++j) std::swap(M.at(piv, j), M.at(r, j));
    }
    Elem s = F.inv(M.at(r, col));
    for (int i = r + 1; i < R; ++i) {
      Elem f = F.mul(M.at(i, col), s);
      if (f == 0) continue;
      for (int j = col; j < C; ++j) M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(r, j)));
    }
    ++r;
  }
  return r;
}

bool is_invertible(const FieldContext& F, const Mat& A) {
  return A.square() && rank(F, A) == A.rows;
}

Mat get_block(const Mat& A, int r0, int c0, int rows, int cols) {
  Mat B(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) B.at(i, j) = A.at(r0 + i, c0 + j);
  }
  return B;
}

void set_block(Mat& A, int r0, int c0, const Mat& B) {
  for (int i = 0; i < B.rows; ++i) {
    for (int j = 0; j < B.cols; ++j) A.at(r0 + i, c0 + j) = B.at(i, j);
  }
}

Mat block_diag(const std::vector<Mat>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.rows;
  if (n > kMaxN) throw std::invalid_argument("block diagonal matrix too large");
  Mat A(n, n);
  int off = 0;
  for (const auto& b : blocks) {
    set_block(A, off, off, b);
    off += b.rows;
  }
  return A;
}

Mat antidiag_blocks(const Mat& top_right, const Mat& bottom_left) {
  int n = top_right.rows + bottom_left.rows;
  Mat A(n, n);
  set_block(A, 0, bottom_left.cols, top_right);
  set_block(A, top_right.rows, 0, bottom_left);
  return A;
}

PolyFq charpoly(const FieldContext& F, const Mat& A) {
  const int n = A.rows;
  Mat H = A;
  for (int j = 0; j + 2 < n; ++j) {
    int piv = -1;
    for (int i = j + 1; i < n; ++i) {
      if (H.at(i, j) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != j + 1) {
      for (int c = 0; c < n; ++c) std::swap(H.at(piv, c), H.at(j + 1, c));
      for (int r = 0; r < n; ++r) std::swap(H.at(r, piv), H.at(r, j + 1));
    }
    Elem s = F.inv(H.at(j + 1, j));
    for (int i = j + 2; i < n; ++i) {
      Elem f = F.mul(H.at(i, j), s);
      if (f == 0) continue;
      for (int c = 0; c < n; ++c) H.at(i, c) = F.sub(H.at(i, c), F.mul(f, H.at(j + 1, c)));
      for (int r = 0; r < n; ++r) H.at(r, j + 1) = F.add(H.at(r, j + 1), F.mul(f, H.at(r, i)));
    }
  }
  // p[m] has degree m, stored low to high.
  std::array<std::array<Elem, kMaxN + 1>, kMaxN + 1> p{};
  p[0][0] = 1;
  for (int m = 1; m <= n; ++m) {
    Elem h = H.at(m - 1, m - 1);
    for (int d = 0; d <= m; ++d) {
      Elem shifted = d > 0 ? p[m - 1][d - 1] : 0;
      Elem base = d < m ? F.mul(h, p[m - 1][d]) : 0;
      p[m][d] = F.sub(shifted, base);
    }
    Elem t = 1;
    for (int i = 1; i < m; ++i) {
      t = F.mul(t, H.at(m - i, m - i - 1));
      Elem coef = F.mul(t, H.at(m - i - 1, m - 1));
      if (coef == 0) continue;
      for (int d = 0; d <= m - i - 1; ++d) p[m][d] = F.sub(p[m][d], F.mul(coef, p[m - i - 1][d]));
    }
  }
  PolyFq f;
  f.c.assign(p[n].begin(), p[n].begin() + n + 1);
  return f;
}

Mat poly_at_matrix(const FieldContext& F, const PolyFq& f, const Mat& A) {
  const int n = A.rows;
  Mat R = scalar_mat(n, f.c.back());
  for (int i = f.degree() - 1; i >= 0; --i) {
    R = mat_mul(F, R, A);
    for (int d = 0; d < n; ++d) R.at(d, d) = F.add(R.at(d, d), f.c[i]);
  }
  return R;
}

Mat companion(const FieldContext& F, const PolyFq& f) {
  const int d = f.degree();
  Mat C(d, d);
  for (int i = 1; i < d; ++i) C.at(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) C.at(i, d - 1) = F.neg(f.c[i]);
  return C;
}

std::string mat_string(const FieldContext& F, const Mat& A) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < A.rows; ++i) {
    if (i) os << ";";
    for (int j = 0; j < A.cols; ++j) {
      if (j) os << ",";
      os << F.elem_string(A.at(i, j));
    }
  }
  os << "]";
  return os.str();
}

}  // namespace gkb
