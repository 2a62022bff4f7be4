#pragma once

#include <doctest.h>

#include "qwass/linalg.hpp"

namespace qwass::testing {

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
  return max_diff(a.matrix(), b.matrix());
}

inline ComplexMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  ComplexMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace qwass::testing
