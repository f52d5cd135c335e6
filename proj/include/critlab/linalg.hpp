#pragma once

#include <cassert>
#include <cmath>
#include <vector>

namespace critlab {

// Dense row-major matrix, sized for the small systems appearing here
// (derivation spaces, least-squares fits); not a general-purpose BLAS.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        double aik = (*this)(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// Solves the square system Ax=b by Gaussian elimination with partial
// pivoting; returns false if the pivot falls below `tol`.
inline bool solve_square(Mat a, std::vector<double> b, std::vector<double>& x,
                         double tol = 1e-13) {
  int n = a.rows();
  assert(a.cols() == n && static_cast<int>(b.size()) == n);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (std::fabs(a(piv, col)) < tol) return false;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return true;
}

inline double det4(const Mat& m) {
  int n = m.rows();
  Mat a = m;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      double f = a(r, col) / a(col, col);
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Eigenvalues land in
// `eval`, eigenvectors in the columns of `evec`.
inline void symmetric_eigen(Mat s, std::vector<double>& eval, Mat& evec) {
  int n = s.rows();
  evec = Mat::identity(n);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = s(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * c;
        for (int k = 0; k < n; ++k) {
          double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < n; ++k) {
          double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
        for (int k = 0; k < n; ++k) {
          double vp = evec(k, p), vq = evec(k, q);
          evec(k, p) = c * vp - sn * vq;
          evec(k, q) = sn * vp + c * vq;
        }
      }
  }
  eval.assign(n, 0.0);
  for (int i = 0; i < n; ++i) eval[i] = s(i, i);
}

// Nullspace basis of A (columns of the result) from the spectrum of AtA.
// The threshold applies to eigenvalues of AtA relative to the largest one;
// numerically-zero directions sit many orders below it, genuine directions
// many orders above, so the gap is wide for the systems solved here.
inline Mat nullspace(const Mat& a, double rel_tol) {
  Mat ata = a.transposed() * a;
  std::vector<double> eval;
  Mat evec;
  symmetric_eigen(ata, eval, evec);
  int n = ata.rows();
  double max_ev = 0.0;
  for (double e : eval) max_ev = std::max(max_ev, std::fabs(e));
  double cut = max_ev * rel_tol;
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (std::fabs(eval[i]) <= std::max(cut, 1e-300)) keep.push_back(i);
  Mat basis(n, static_cast<int>(keep.size()));
  for (int j = 0; j < static_cast<int>(keep.size()); ++j)
    for (int i = 0; i < n; ++i) basis(i, j) = evec(i, keep[j]);
  return basis;
}

// Minimum-norm least squares via normal equations with Tikhonov fallback.
// The systems here are tiny and well scaled, so this is adequate.
inline std::vector<double> least_squares(const Mat& a, const std::vector<double>& b) {
  Mat at = a.transposed();
  Mat ata = at * a;
  int n = ata.rows();
  std::vector<double> atb(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < a.rows(); ++r) atb[i] += at(i, r) * b[r];
  std::vector<double> x;
  if (solve_square(ata, atb, x, 1e-14)) return x;
  double ridge = 1e-12;
  for (int i = 0; i < n; ++i) ridge = std::max(ridge, 1e-10 * std::fabs(ata(i, i)));
  for (int i = 0; i < n; ++i) ata(i, i) += ridge;
  solve_square(ata, atb, x, 0.0);
  return x;
}

}  // namespace critlab
