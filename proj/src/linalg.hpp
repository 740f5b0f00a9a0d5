#pragma once

#include <cstddef>
#include <vector>

#include "gf.hpp"

namespace strelay {

/// Dense row-major matrix over a finite field.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    SymbolVec v;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0) {}

    Symbol& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
    Symbol at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }
    const Symbol* row(std::size_t r) const { return v.data() + r * cols; }
    Symbol* row(std::size_t r) { return v.data() + r * cols; }
};

/// Solves a.x = b for square invertible a. Throws SingularSystemError otherwise.
SymbolVec solve_linear_system(const Field& f, const Matrix& a, const SymbolVec& b);

/// Solves a.X = B column-wise for several right-hand sides at once.
/// B is rows x nrhs; result is a matrix with one solution per column.
Matrix solve_linear_system_multi(const Field& f, const Matrix& a, const Matrix& b);

Symbol dot(const Field& f, const Symbol* a, const Symbol* b, std::size_t n);

}  // namespace strelay
