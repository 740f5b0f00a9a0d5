#include "linalg.hpp"

#include "errors.hpp"

namespace strelay {

Matrix solve_linear_system_multi(const Field& f, const Matrix& a, const Matrix& b) {
    if (a.rows != a.cols) throw DimensionError("system matrix must be square");
    if (b.rows != a.rows) throw DimensionError("right-hand side row count mismatch");
    const std::size_t n = a.rows;
    const std::size_t m = b.cols;

    Matrix w = a;
    Matrix r = b;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && w.at(piv, col) == 0) ++piv;
        if (piv == n) throw SingularSystemError("singular system");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(col, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(r.at(piv, j), r.at(col, j));
        }
        const Symbol ip = f.inv(w.at(col, col));
        for (std::size_t j = col; j < n; ++j) w.at(col, j) = f.mul(w.at(col, j), ip);
        for (std::size_t j = 0; j < m; ++j) r.at(col, j) = f.mul(r.at(col, j), ip);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const Symbol c = w.at(i, col);
            if (c == 0) continue;
            for (std::size_t j = col; j < n; ++j)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(c, w.at(col, j)));
            for (std::size_t j = 0; j < m; ++j)
                r.at(i, j) = f.sub(r.at(i, j), f.mul(c, r.at(col, j)));
        }
    }
    return r;
}

SymbolVec solve_linear_system(const Field& f, const Matrix& a, const SymbolVec& b) {
    Matrix rhs(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs.at(i, 0) = b[i];
    Matrix x = solve_linear_system_multi(f, a, rhs);
    SymbolVec out(a.cols);
    for (std::size_t i = 0; i < a.cols; ++i) out[i] = x.at(i, 0);
    return out;
}

Symbol dot(const Field& f, const Symbol* a, const Symbol* b, std::size_t n) {
    Symbol acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc = f.add(acc, f.mul(a[i], b[i]));
    return acc;
}

}  // namespace strelay
