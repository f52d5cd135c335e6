#pragma once

#include <stdexcept>
#include <string>

namespace critlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JacobiViolation : Error {
  double defect;
  int i, j, k, m;
  JacobiViolation(double defect_, int i_, int j_, int k_, int m_)
      : Error("Jacobi identity violated: defect " + std::to_string(defect_) +
              " at quadruple (" + std::to_string(i_) + "," + std::to_string(j_) +
              "," + std::to_string(k_) + "," + std::to_string(m_) + ")"),
        defect(defect_), i(i_), j(j_), k(k_), m(m_) {}
};

struct IndexOutOfRange : Error {
  using Error::Error;
};
struct NonPositiveScale : Error {
  using Error::Error;
};
struct SingularMap : Error {
  using Error::Error;
};
struct NotOrthogonal : Error {
  using Error::Error;
};
struct EqualIndices : Error {
  using Error::Error;
};
struct BadFactorDimension : Error {
  using Error::Error;
};
struct WrongDimension : Error {
  using Error::Error;
};
struct ZeroScalarCurvature : Error {
  using Error::Error;
};
struct OutOfDomain : Error {
  using Error::Error;
};
struct NoRoot : Error {
  using Error::Error;
};
struct ModeMismatch : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct FileNotFound : Error {
  using Error::Error;
};
struct UnknownFamily : Error {
  using Error::Error;
};
struct NotSymbolicallyVerifiable : Error {
  using Error::Error;
};

}  // namespace critlab
