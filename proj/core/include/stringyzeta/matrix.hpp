#ifndef STRINGYZETA_MATRIX_HPP
#define STRINGYZETA_MATRIX_HPP

#include "stringyzeta/rational.hpp"

#include <vector>

namespace stringyzeta {

using IntMatrix = std::vector<std::vector<long long>>;
using QMatrix = std::vector<std::vector<Rational>>;
using QVector = std::vector<Rational>;

// Exact determinant by fraction-free elimination.
Rational determinant(QMatrix a);

// Leading principal minors alternate in sign starting negative:
// sign(det of k x k minor) == (-1)^k for every k.
bool negative_definite(const IntMatrix& m);

// Solves a*x = b exactly; throws std::domain_error on a singular matrix.
QVector solve_linear(QMatrix a, QVector b);

} // namespace stringyzeta

#endif
