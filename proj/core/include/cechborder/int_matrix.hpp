#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "cechborder/integer.hpp"

namespace cechb {

using IntVector = std::vector<Integer>;

// Dense row-major matrix of exact integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(size_t n);
    static IntMatrix zero(size_t rows, size_t cols) { return IntMatrix(rows, cols); }
    static IntMatrix diagonal(size_t rows, size_t cols, const IntVector& diag);
    static IntMatrix from_columns(size_t rows, const std::vector<IntVector>& columns);
    static IntMatrix from_rows(size_t cols, const std::vector<IntVector>& rows);

    size_t rows() const noexcept { return rows_; }
    size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(size_t r) const;
    IntVector column(size_t c) const;
    IntVector apply(const IntVector& x) const;

    IntMatrix transpose() const;
    IntMatrix block(size_t r0, size_t c0, size_t nrows, size_t ncols) const;
    bool is_zero() const;

    // Elementary operations; the unimodular ones are the only mutations SNF uses.
    void swap_rows(size_t a, size_t b);
    void swap_cols(size_t a, size_t b);
    void add_row_multiple(size_t target, size_t source, const Integer& factor);  // row_t += f * row_s
    void add_col_multiple(size_t target, size_t source, const Integer& factor);  // col_t += f * col_s
    void negate_row(size_t r);
    void negate_col(size_t c);

    // Fraction-free elimination over Q.
    size_t rank() const;
    Integer determinant() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);
    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);
// Repeats `m` down the diagonal `copies` times.
IntMatrix block_repeat(const IntMatrix& m, size_t copies);

struct SmithForm {
    IntMatrix U;      // rows x rows, unimodular
    IntMatrix D;      // rows x cols, diagonal with d1 | d2 | ...
    IntMatrix V;      // cols x cols, unimodular
    IntMatrix U_inv;  // inverse of U
    IntVector diagonal;
    size_t rank = 0;
};

struct SmithOptions {
    bool track_U = true;
    bool track_V = true;
    bool track_U_inverse = false;
};

// U * M * V = D with nonnegative diagonal entries forming a divisibility chain.
// Pivots are chosen by smallest nonzero magnitude.
SmithForm smith_normal_form(const IntMatrix& m, SmithOptions options = {});

}  // namespace cechb
