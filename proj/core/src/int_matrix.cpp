#include "cechborder/int_matrix.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace cechb {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("ragged matrix literal");
        for (long long v : r)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(size_t n)
{
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(size_t rows, size_t cols, const IntVector& diag)
{
    IntMatrix m(rows, cols);
    for (size_t i = 0; i < diag.size() && i < rows && i < cols; ++i)
        m(i, i) = diag[i];
    return m;
}

IntMatrix IntMatrix::from_columns(size_t rows, const std::vector<IntVector>& columns)
{
    IntMatrix m(rows, columns.size());
    for (size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw std::invalid_argument("column length mismatch");
        for (size_t r = 0; r < rows; ++r)
            m(r, c) = columns[c][r];
    }
    return m;
}

IntMatrix IntMatrix::from_rows(size_t cols, const std::vector<IntVector>& rows)
{
    IntMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("row length mismatch");
        for (size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

IntVector IntMatrix::row(size_t r) const
{
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(size_t c) const
{
    IntVector v(rows_);
    for (size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

IntVector IntMatrix::apply(const IntVector& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("matrix-vector dimension mismatch");
    IntVector y(rows_);
    for (size_t c = 0; c < cols_; ++c) {
        if (x[c].is_zero())
            continue;
        for (size_t r = 0; r < rows_; ++r)
            y[r].addmul(x[c], (*this)(r, c));
    }
    return y;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix IntMatrix::block(size_t r0, size_t c0, size_t nrows, size_t ncols) const
{
    if (r0 + nrows > rows_ || c0 + ncols > cols_)
        throw std::out_of_range("matrix block out of range");
    IntMatrix b(nrows, ncols);
    for (size_t r = 0; r < nrows; ++r)
        for (size_t c = 0; c < ncols; ++c)
            b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
}

bool IntMatrix::is_zero() const
{
    for (const auto& v : data_)
        if (!v.is_zero())
            return false;
    return true;
}

void IntMatrix::swap_rows(size_t a, size_t b)
{
    if (a == b)
        return;
    for (size_t c = 0; c < cols_; ++c)
        std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(size_t a, size_t b)
{
    if (a == b)
        return;
    for (size_t r = 0; r < rows_; ++r)
        std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(size_t target, size_t source, const Integer& factor)
{
    if (factor.is_zero())
        return;
    for (size_t c = 0; c < cols_; ++c)
        (*this)(target, c).addmul(factor, (*this)(source, c));
}

void IntMatrix::add_col_multiple(size_t target, size_t source, const Integer& factor)
{
    if (factor.is_zero())
        return;
    for (size_t r = 0; r < rows_; ++r)
        (*this)(r, target).addmul(factor, (*this)(r, source));
}

void IntMatrix::negate_row(size_t r)
{
    for (size_t c = 0; c < cols_; ++c)
        (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(size_t c)
{
    for (size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = -(*this)(r, c);
}

namespace {

// Bareiss elimination; returns rank and leaves the last pivot (the
// determinant up to sign, for square full-rank input) in `last`.
size_t bareiss(IntMatrix a, Integer& last, int& swaps)
{
    const size_t m = a.rows(), n = a.cols();
    Integer prev(1);
    size_t r = 0;
    swaps = 0;
    last = Integer(0);
    for (size_t c = 0; c < n && r < m; ++c) {
        size_t p = r;
        while (p < m && a(p, c).is_zero())
            ++p;
        if (p == m)
            continue;
        if (p != r) {
            a.swap_rows(p, r);
            ++swaps;
        }
        for (size_t i = r + 1; i < m; ++i) {
            for (size_t j = c + 1; j < n; ++j) {
                Integer v = a(i, j) * a(r, c);
                v.submul(a(i, c), a(r, j));
                a(i, j) = v / prev;
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        last = prev;
        ++r;
    }
    return r;
}

}  // namespace

size_t IntMatrix::rank() const
{
    Integer last;
    int swaps;
    return bareiss(*this, last, swaps);
}

Integer IntMatrix::determinant() const
{
    if (rows_ != cols_)
        throw std::invalid_argument("determinant of a non-square matrix");
    if (rows_ == 0)
        return Integer(1);
    Integer last;
    int swaps;
    size_t r = bareiss(*this, last, swaps);
    if (r < rows_)
        return Integer(0);
    return (swaps % 2) ? -last : last;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix p(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(i, k);
            if (x.is_zero())
                continue;
            for (size_t j = 0; j < b.cols_; ++j)
                p(i, j).addmul(x, b(k, j));
        }
    return p;
}

bool operator==(const IntMatrix& a, const IntMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
{
    os << '[';
    for (size_t r = 0; r < m.rows_; ++r) {
        os << (r ? ",[" : "[");
        for (size_t c = 0; c < m.cols_; ++c)
            os << (c ? "," : "") << m(r, c);
        os << ']';
    }
    return os << ']';
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("hconcat row mismatch");
    IntMatrix m(a.rows(), a.cols() + b.cols());
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c = 0; c < a.cols(); ++c)
            m(r, c) = a(r, c);
        for (size_t c = 0; c < b.cols(); ++c)
            m(r, a.cols() + c) = b(r, c);
    }
    return m;
}

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks)
{
    size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    IntMatrix m(rows, cols);
    size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (size_t r = 0; r < b.rows(); ++r)
            for (size_t c = 0; c < b.cols(); ++c)
                m(r0 + r, c0 + c) = b(r, c);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

IntMatrix block_repeat(const IntMatrix& m, size_t copies)
{
    return block_diagonal(std::vector<IntMatrix>(copies, m));
}

namespace {

// Alternating row and column Hermite reductions until the matrix is
// diagonal, then a gcd/lcm pass for the divisibility chain. Reducing above
// each pivot keeps entries small; plain pivoting blows up on dense input.
class SmithWorker {
public:
    SmithWorker(const IntMatrix& m, SmithOptions opt) : a_(m), opt_(opt)
    {
        if (opt_.track_U)
            u_ = IntMatrix::identity(m.rows());
        if (opt_.track_U_inverse)
            uinv_ = IntMatrix::identity(m.rows());
        if (opt_.track_V)
            v_ = IntMatrix::identity(m.cols());
    }

    SmithForm run()
    {
        for (bool cols = false;; cols = !cols) {
            hermite(cols);
            if (is_diagonal())
                break;
        }
        size_t t = 0;
        for (; t < a_.rows() && t < a_.cols(); ++t) {
            auto [i, j] = find_nonzero(t);
            if (i == a_.rows())
                break;
            swap_lines(false, t, i);
            swap_lines(true, t, j);
            if (a_(t, t).sign() < 0)
                negate_line(false, t);
        }
        for (size_t i = 0; i < t; ++i)
            for (size_t j = i + 1; j < t; ++j)
                if (!divides(a_(i, i), a_(j, j)))
                    gcd_lcm(i, j);

        SmithForm out;
        out.rank = t;
        for (size_t i = 0; i < t; ++i)
            out.diagonal.push_back(a_(i, i));
        out.D = std::move(a_);
        out.U = std::move(u_);
        out.V = std::move(v_);
        out.U_inv = std::move(uinv_);
        return out;
    }

private:
    // cols = true works on the transpose, i.e. with column operations.
    Integer& at(bool cols, size_t i, size_t j) { return cols ? a_(j, i) : a_(i, j); }
    size_t lines(bool cols) const { return cols ? a_.cols() : a_.rows(); }
    size_t width(bool cols) const { return cols ? a_.rows() : a_.cols(); }

    void hermite(bool cols)
    {
        size_t r = 0;
        for (size_t c = 0; c < width(cols) && r < lines(cols); ++c) {
            size_t p = lines(cols);
            for (size_t i = r; i < lines(cols); ++i) {
                const Integer& x = at(cols, i, c);
                if (!x.is_zero() && (p == lines(cols) || Integer::compare_abs(x, at(cols, p, c)) < 0))
                    p = i;
            }
            if (p == lines(cols))
                continue;
            swap_lines(cols, r, p);
            for (size_t i = r + 1; i < lines(cols); ++i) {
                const Integer x = at(cols, i, c);
                if (x.is_zero())
                    continue;
                const Integer pivot = at(cols, r, c);
                if (divides(pivot, x)) {
                    add_line(cols, i, r, -(x / pivot));
                } else {
                    Integer s, t;
                    const Integer g = xgcd(pivot, x, s, t);
                    combine_lines(cols, r, i, s, t, -(x / g), pivot / g);
                }
            }
            if (at(cols, r, c).sign() < 0)
                negate_line(cols, r);
            for (size_t k = 0; k < r; ++k)
                if (!at(cols, k, c).is_zero())
                    add_line(cols, k, r, -floor_div(at(cols, k, c), at(cols, r, c)));
            ++r;
        }
    }

    bool is_diagonal() const
    {
        std::vector<int> per_col(a_.cols(), 0);
        for (size_t i = 0; i < a_.rows(); ++i) {
            int per_row = 0;
            for (size_t j = 0; j < a_.cols(); ++j)
                if (!a_(i, j).is_zero() && (++per_row > 1 || ++per_col[j] > 1))
                    return false;
        }
        return true;
    }

    std::pair<size_t, size_t> find_nonzero(size_t t) const
    {
        for (size_t i = t; i < a_.rows(); ++i)
            for (size_t j = t; j < a_.cols(); ++j)
                if (!a_(i, j).is_zero())
                    return {i, j};
        return {a_.rows(), a_.cols()};
    }

    // diag(a, b) -> diag(gcd, lcm) at positions i < j.
    void gcd_lcm(size_t i, size_t j)
    {
        const Integer a = a_(i, i), b = a_(j, j);
        Integer s, t;
        const Integer g = xgcd(a, b, s, t);
        combine_lines(false, i, j, s, t, -(b / g), a / g);
        // columns: new i = i + j, new j = -(t b / g) i + (s a / g) j
        combine_lines(true, i, j, Integer(1), Integer(1), -(t * (b / g)), s * (a / g));
    }

    void swap_lines(bool cols, size_t a, size_t b)
    {
        if (a == b)
            return;
        if (cols) {
            a_.swap_cols(a, b);
            if (opt_.track_V)
                v_.swap_cols(a, b);
            return;
        }
        a_.swap_rows(a, b);
        if (opt_.track_U)
            u_.swap_rows(a, b);
        if (opt_.track_U_inverse)
            uinv_.swap_cols(a, b);
    }

    void negate_line(bool cols, size_t i)
    {
        if (cols) {
            a_.negate_col(i);
            if (opt_.track_V)
                v_.negate_col(i);
            return;
        }
        a_.negate_row(i);
        if (opt_.track_U)
            u_.negate_row(i);
        if (opt_.track_U_inverse)
            uinv_.negate_col(i);
    }

    // line_target += f * line_source
    void add_line(bool cols, size_t target, size_t source, const Integer& f)
    {
        if (f.is_zero())
            return;
        if (cols) {
            a_.add_col_multiple(target, source, f);
            if (opt_.track_V)
                v_.add_col_multiple(target, source, f);
            return;
        }
        a_.add_row_multiple(target, source, f);
        if (opt_.track_U)
            u_.add_row_multiple(target, source, f);
        if (opt_.track_U_inverse)
            uinv_.add_col_multiple(source, target, -f);
    }

    // (line_p, line_q) <- (x p + y q, z p + w q) with x w - y z = 1.
    static void combine_rows(IntMatrix& m, size_t p, size_t q, const Integer& x, const Integer& y, const Integer& z,
                             const Integer& w)
    {
        for (size_t c = 0; c < m.cols(); ++c) {
            const Integer a = m(p, c), b = m(q, c);
            m(p, c) = x * a + y * b;
            m(q, c) = z * a + w * b;
        }
    }

    static void combine_cols(IntMatrix& m, size_t p, size_t q, const Integer& x, const Integer& y, const Integer& z,
                             const Integer& w)
    {
        for (size_t r = 0; r < m.rows(); ++r) {
            const Integer a = m(r, p), b = m(r, q);
            m(r, p) = x * a + y * b;
            m(r, q) = z * a + w * b;
        }
    }

    void combine_lines(bool cols, size_t p, size_t q, const Integer& x, const Integer& y, const Integer& z,
                       const Integer& w)
    {
        if (cols) {
            combine_cols(a_, p, q, x, y, z, w);
            if (opt_.track_V)
                combine_cols(v_, p, q, x, y, z, w);
            return;
        }
        combine_rows(a_, p, q, x, y, z, w);
        if (opt_.track_U)
            combine_rows(u_, p, q, x, y, z, w);
        // U^-1 picks up the inverse [[w, -y], [-z, x]] on the right
        if (opt_.track_U_inverse)
            combine_cols(uinv_, p, q, w, -z, -y, x);
    }

    IntMatrix a_;
    SmithOptions opt_;
    IntMatrix u_, uinv_, v_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m, SmithOptions options)
{
    return SmithWorker(m, options).run();
}

}  // namespace cechb
