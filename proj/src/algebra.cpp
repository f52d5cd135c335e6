#include "critlab/algebra.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "critlab/errors.hpp"
#include "critlab/util.hpp"

namespace critlab {

LinearMap LinearMap::identity(int dim) {
  LinearMap m;
  m.dim = dim;
  for (int i = 0; i < dim; ++i) m.m[i][i] = 1.0;
  return m;
}

double LinearMap::determinant() const {
  Mat a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = m[i][j];
  return det4(a);
}

bool LinearMap::is_orthogonal(double tol) const {
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double dot = 0.0;
      for (int k = 0; k < dim; ++k) dot += m[i][k] * m[j][k];
      if (std::fabs(dot - (i == j ? 1.0 : 0.0)) > tol) return false;
    }
  return true;
}

double jacobi_defect_dense(int dim, const double c[kMaxDim][kMaxDim][kMaxDim],
                           int* worst) {
  double defect = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k)
        for (int m = 0; m < dim; ++m) {
          double s = 0.0;
          for (int l = 0; l < dim; ++l)
            s += c[i][j][l] * c[l][k][m] + c[j][k][l] * c[l][i][m] +
                 c[k][i][l] * c[l][j][m];
          if (std::fabs(s) > defect) {
            defect = std::fabs(s);
            if (worst) {
              worst[0] = i + 1;
              worst[1] = j + 1;
              worst[2] = k + 1;
              worst[3] = m + 1;
            }
          }
        }
  return defect;
}

double jacobi_defect(const MetricLieAlgebra& mla) {
  return jacobi_defect_dense(mla.dim, mla.c, nullptr);
}

MetricLieAlgebra mla_from_dense(int dim, const double c[kMaxDim][kMaxDim][kMaxDim],
                                double jacobi_tol, std::string label) {
  MetricLieAlgebra mla;
  mla.dim = dim;
  mla.label = std::move(label);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) mla.c[i][j][k] = c[i][j][k];
  // Jacobi tolerance applies to unit-normalized constants.
  double scale = std::max(mla.max_abs_c(), 1.0);
  int worst[4] = {0, 0, 0, 0};
  double defect = jacobi_defect_dense(dim, mla.c, worst) / (scale * scale);
  if (defect > jacobi_tol)
    throw JacobiViolation(defect, worst[0], worst[1], worst[2], worst[3]);
  return mla;
}

MetricLieAlgebra new_metric_lie_algebra(int dim, const std::vector<BracketEntry>& brackets,
                                        double jacobi_tol, std::string label) {
  if (dim != 3 && dim != 4)
    throw IndexOutOfRange("dimension must be 3 or 4, got " + std::to_string(dim));
  double c[kMaxDim][kMaxDim][kMaxDim] = {};
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& b : brackets) {
    if (b.i < 1 || b.j < 1 || b.k < 1 || b.i > dim || b.j > dim || b.k > dim)
      throw IndexOutOfRange("bracket index outside 1.." + std::to_string(dim));
    if (b.i >= b.j)
      throw IndexOutOfRange("bracket entries require i<j, got (" + std::to_string(b.i) +
                            "," + std::to_string(b.j) + ")");
    if (!seen.insert({b.i, b.j, b.k}).second)
      throw IndexOutOfRange("duplicate bracket entry (" + std::to_string(b.i) + "," +
                            std::to_string(b.j) + "," + std::to_string(b.k) + ")");
    c[b.i - 1][b.j - 1][b.k - 1] = b.value;
    c[b.j - 1][b.i - 1][b.k - 1] = -b.value;
  }
  return mla_from_dense(dim, c, jacobi_tol, std::move(label));
}

bool is_unimodular(const MetricLieAlgebra& mla, double tol) {
  for (int i = 0; i < mla.dim; ++i) {
    double tr = 0.0;
    for (int j = 0; j < mla.dim; ++j) tr += mla.c[i][j][j];
    if (std::fabs(tr) > tol) return false;
  }
  return true;
}

MetricLieAlgebra scale_structure(const MetricLieAlgebra& mla, double s) {
  if (!(s > 0.0)) throw NonPositiveScale("scale must be positive, got " + std::to_string(s));
  MetricLieAlgebra out = mla;
  for (int i = 0; i < mla.dim; ++i)
    for (int j = 0; j < mla.dim; ++j)
      for (int k = 0; k < mla.dim; ++k) out.c[i][j][k] = s * mla.c[i][j][k];
  return out;
}

MetricLieAlgebra change_basis(const MetricLieAlgebra& mla, const LinearMap& map,
                              bool orthogonal_required) {
  if (map.dim != mla.dim) throw WrongDimension("map dimension does not match algebra");
  if (std::fabs(map.determinant()) < 1e-12)
    throw SingularMap("change-of-basis map is singular");
  if (orthogonal_required && !map.is_orthogonal())
    throw NotOrthogonal("map is not orthogonal but orthogonality was required");

  int n = mla.dim;
  // [ebar_i, ebar_j] = sum_{p,q} m[i][p] m[j][q] [e_p,e_q]; then express in the
  // ebar frame via the inverse transpose.
  Mat mm(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mm(i, j) = map.m[i][j];

  // Solve M^T x = e_k for each k to build the dual coefficients.
  Mat mt = mm.transposed();
  Mat dual(n, n);
  for (int k = 0; k < n; ++k) {
    std::vector<double> rhs(n, 0.0);
    rhs[k] = 1.0;
    std::vector<double> x;
    if (!solve_square(mt, rhs, x)) throw SingularMap("change-of-basis map is singular");
    for (int i = 0; i < n; ++i) dual(i, k) = x[i];
  }

  double out[kMaxDim][kMaxDim][kMaxDim] = {};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v[kMaxDim] = {};
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          double f = map.m[i][p] * map.m[j][q];
          if (f == 0.0) continue;
          for (int r = 0; r < n; ++r) v[r] += f * mla.c[p][q][r];
        }
      // v holds [ebar_i,ebar_j] in the old frame; re-express on ebar via
      // alpha = (M^T)^{-1} v.
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int r = 0; r < n; ++r) s += dual(k, r) * v[r];
        out[i][j][k] = s;
      }
    }
  return mla_from_dense(n, out, 1e-9, mla.label);
}

std::vector<Mat> derivation_space(const MetricLieAlgebra& mla, double rel_tol) {
  int n = mla.dim;
  // Unknowns D[r][s] flattened; equations D[e_i,e_j] = [De_i,e_j] + [e_i,De_j].
  int rows = n * (n - 1) / 2 * n;
  Mat a(rows, n * n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k, ++row) {
        // d/dD of: sum_l c[i][j][l] D[k][l]  -  sum_l D[l][i] c[l][j][k]
        //          - sum_l D[l][j] c[i][l][k]  = 0
        for (int l = 0; l < n; ++l) {
          a(row, k * n + l) += mla.c[i][j][l];
          a(row, l * n + i) -= mla.c[l][j][k];
          a(row, l * n + j) -= mla.c[i][l][k];
        }
      }
  Mat basis = nullspace(a, rel_tol);
  std::vector<Mat> out;
  for (int col = 0; col < basis.cols(); ++col) {
    Mat d(n, n);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) d(r, s) = basis(r * n + s, col);
    out.push_back(d);
  }
  return out;
}

MetricLieAlgebra parse_metric_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid metric spec JSON: ") + e.what());
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("metric spec missing integer \"dim\"");
  int dim = j["dim"].get<int>();
  std::vector<BracketEntry> brackets;
  if (j.contains("brackets")) {
    for (const auto& row : j["brackets"]) {
      if (!row.is_array() || row.size() != 4)
        throw ParseError("each bracket must be [i,j,k,value]");
      brackets.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>(),
                          row[3].get<double>()});
    }
  }
  std::string label = j.value("label", std::string{});
  return new_metric_lie_algebra(dim, brackets, kJacobiTol, label);
}

MetricLieAlgebra load_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open metric spec file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_metric_spec(ss.str());
}

std::string metric_spec_json(const MetricLieAlgebra& mla) {
  std::ostringstream os;
  os << "{\"dim\":" << mla.dim << ",\"brackets\":[";
  bool first = true;
  for (int i = 0; i < mla.dim; ++i)
    for (int j = i + 1; j < mla.dim; ++j)
      for (int k = 0; k < mla.dim; ++k)
        if (mla.c[i][j][k] != 0.0) {
          if (!first) os << ",";
          first = false;
          os << "[" << (i + 1) << "," << (j + 1) << "," << (k + 1) << ","
             << format_double17(mla.c[i][j][k]) << "]";
        }
  os << "]";
  if (!mla.label.empty()) {
    os << ",\"label\":" << nlohmann::json(mla.label).dump();
  }
  os << "}";
  return os.str();
}

}  // namespace critlab
