#pragma once

#include "cwl/group/matrix_group.hpp"

namespace cwl {

/// A = [[2,1],[1,1]].
inline IntMatrix cat_matrix() { return IntMatrix::from_rows({{2, 1}, {1, 1}}); }

/// t = diag(1, A) in SL_3(Z).
inline IntMatrix t_matrix() { return IntMatrix::from_rows({{1, 0, 0}, {0, 2, 1}, {0, 1, 1}}); }

/// u(a,b) = I + a E21 + b E31.
inline IntMatrix u_matrix(const BigInt& a, const BigInt& b) {
  IntMatrix m = IntMatrix::identity(3);
  m(1, 0) = a;
  m(2, 0) = b;
  return m;
}

/// K = <u(1,0), u(0,1), t> with its symmetric generating set.
inline MatrixGroupZ k_group() {
  return MatrixGroupZ::symmetric(3, {u_matrix(1, 0), u_matrix(0, 1), t_matrix()}, {"u10", "u01", "t"}, "K");
}

}  // namespace cwl
