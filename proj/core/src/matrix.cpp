#include "stringyzeta/matrix.hpp"

#include <cstddef>
#include <stdexcept>

namespace stringyzeta {

Rational determinant(QMatrix a) {
    const std::size_t n = a.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            if (a[row][col].is_zero()) continue;
            Rational f = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k)
                a[row][k] -= f * a[col][k];
        }
    }
    return det;
}

bool negative_definite(const IntMatrix& m) {
    const std::size_t n = m.size();
    for (std::size_t k = 1; k <= n; ++k) {
        QMatrix minor(k, QVector(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                minor[i][j] = Rational(m[i][j]);
        int s = determinant(std::move(minor)).sign();
        if ((k % 2 == 1 && s != -1) || (k % 2 == 0 && s != 1)) return false;
    }
    return true;
}

QVector solve_linear(QMatrix a, QVector b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("solve_linear: size mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw std::domain_error("solve_linear: singular matrix");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            Rational f = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k)
                a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    QVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

} // namespace stringyzeta
