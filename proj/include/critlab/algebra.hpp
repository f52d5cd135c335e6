#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "critlab/linalg.hpp"

namespace critlab {

constexpr int kMaxDim = 4;
constexpr double kJacobiTol = 1e-12;

// A Lie algebra of dimension 3 or 4 carrying an inner product, described by
// its structure constants in an orthonormal frame:
//   c[i][j][k] = <[e_i,e_j], e_k>   (0-based indices internally).
// Values are immutable after construction.
struct MetricLieAlgebra {
  int dim = 0;
  double c[kMaxDim][kMaxDim][kMaxDim] = {};
  std::string label;

  double max_abs_c() const {
    double m = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) m = std::max(m, std::fabs(c[i][j][k]));
    return m;
  }
};

// Invertible change-of-basis coefficients: new frame ebar_i = sum_j m[i][j] e_j.
struct LinearMap {
  int dim = 0;
  double m[kMaxDim][kMaxDim] = {};

  static LinearMap identity(int dim);
  double determinant() const;
  bool is_orthogonal(double tol = 1e-12) const;
};

// One bracket entry [e_i,e_j] = value * e_k with 1-based indices and i<j.
struct BracketEntry {
  int i, j, k;
  double value;
};

// Builds a metric Lie algebra from sparse brackets; applies antisymmetric
// completion and rejects inputs whose Jacobi defect exceeds `jacobi_tol`.
// Throws IndexOutOfRange or JacobiViolation.
MetricLieAlgebra new_metric_lie_algebra(int dim, const std::vector<BracketEntry>& brackets,
                                        double jacobi_tol = kJacobiTol,
                                        std::string label = {});

// Same, but from a raw dense c array (internal helper for generators).
MetricLieAlgebra mla_from_dense(int dim, const double c[kMaxDim][kMaxDim][kMaxDim],
                                double jacobi_tol = kJacobiTol, std::string label = {});

// Max-norm of the Jacobiator over all index quadruples; 0 iff a Lie algebra.
double jacobi_defect(const MetricLieAlgebra& mla);
double jacobi_defect_dense(int dim, const double c[kMaxDim][kMaxDim][kMaxDim],
                           int* worst = nullptr);

// True iff tr(ad_x) = 0 for every frame direction.
bool is_unimodular(const MetricLieAlgebra& mla, double tol = 1e-12);

// Homothety g -> s^-2 g acts on orthonormal-frame structure constants by c -> s*c.
MetricLieAlgebra scale_structure(const MetricLieAlgebra& mla, double s);

// Pushes brackets through ebar = M e. When `orthogonal_required`, M must
// satisfy M^T M = I (isometry); otherwise any invertible map is accepted and
// the result is the same algebra expressed in a non-isometric frame.
MetricLieAlgebra change_basis(const MetricLieAlgebra& mla, const LinearMap& map,
                              bool orthogonal_required);

// Basis (columns packed as dim x dim matrices) of der(g) up to numerical rank.
std::vector<Mat> derivation_space(const MetricLieAlgebra& mla, double rel_tol = 1e-10);

// Metric-spec file ingestion: {"dim":4,"brackets":[[1,2,3,1.0],...],"label":"..."}.
MetricLieAlgebra parse_metric_spec(const std::string& json_text);
MetricLieAlgebra load_metric_file(const std::string& path);
std::string metric_spec_json(const MetricLieAlgebra& mla);

}  // namespace critlab
