#include "cechborder/lattice.hpp"

#include <stdexcept>
#include <utility>

namespace cechb {

namespace {

bool all_zero(const IntVector& v)
{
    for (const auto& x : v)
        if (!x.is_zero())
            return false;
    return true;
}

// row_t += f * row_s on both the generator and the transform arrays.
void combine(std::vector<IntVector>& rows, std::vector<IntVector>* tr, size_t t, size_t s, const Integer& f)
{
    if (f.is_zero())
        return;
    IntVector& dst = rows[t];
    const IntVector& src = rows[s];
    for (size_t c = 0; c < dst.size(); ++c)
        if (!src[c].is_zero())
            dst[c].addmul(f, src[c]);
    if (tr) {
        IntVector& tdst = (*tr)[t];
        const IntVector& tsrc = (*tr)[s];
        for (size_t c = 0; c < tdst.size(); ++c)
            if (!tsrc[c].is_zero())
                tdst[c].addmul(f, tsrc[c]);
    }
}

}  // namespace

Echelon echelon(size_t dim, std::vector<IntVector> rows, bool with_transform)
{
    const size_t k = rows.size();
    for (const auto& r : rows)
        if (r.size() != dim)
            throw std::invalid_argument("generator length does not match ambient dimension");
    std::vector<IntVector> transform;
    if (with_transform) {
        transform.assign(k, IntVector(k));
        for (size_t i = 0; i < k; ++i)
            transform[i][i] = 1;
    }
    std::vector<IntVector>* tr = with_transform ? &transform : nullptr;

    Echelon out;
    size_t r = 0;
    for (size_t col = 0; col < dim && r < k; ++col) {
        for (;;) {
            size_t best = k;
            for (size_t i = r; i < k; ++i) {
                if (rows[i][col].is_zero())
                    continue;
                if (best == k || Integer::compare_abs(rows[i][col], rows[best][col]) < 0)
                    best = i;
            }
            if (best == k)
                break;
            if (best != r) {
                std::swap(rows[best], rows[r]);
                if (tr)
                    std::swap(transform[best], transform[r]);
            }
            bool others = false;
            for (size_t i = r + 1; i < k; ++i) {
                if (rows[i][col].is_zero())
                    continue;
                Integer q = rows[i][col] / rows[r][col];
                combine(rows, tr, i, r, -q);
                if (!rows[i][col].is_zero())
                    others = true;
            }
            if (!others)
                break;
        }
        if (rows[r][col].is_zero())
            continue;
        if (rows[r][col].sign() < 0) {
            for (auto& x : rows[r])
                x = -x;
            if (tr)
                for (auto& x : transform[r])
                    x = -x;
        }
        for (size_t i = 0; i < r; ++i) {
            if (rows[i][col].is_zero())
                continue;
            Integer q = floor_div(rows[i][col], rows[r][col]);
            combine(rows, tr, i, r, -q);
        }
        out.pivots.push_back(col);
        ++r;
    }
    for (size_t i = 0; i < k; ++i) {
        if (i < r) {
            out.basis.push_back(std::move(rows[i]));
            if (tr)
                out.basis_transform.push_back(std::move(transform[i]));
        } else if (tr) {
            // rows past the pivot count are zero
            out.relations.push_back(std::move(transform[i]));
        }
    }
    return out;
}

Lattice Lattice::span(size_t dim, std::vector<IntVector> generators)
{
    std::vector<IntVector> nonzero;
    nonzero.reserve(generators.size());
    for (auto& g : generators) {
        if (g.size() != dim)
            throw std::invalid_argument("generator length does not match ambient dimension");
        if (!all_zero(g))
            nonzero.push_back(std::move(g));
    }
    Echelon e = echelon(dim, std::move(nonzero), false);
    Lattice l(dim);
    l.basis_ = std::move(e.basis);
    l.pivots_ = std::move(e.pivots);
    return l;
}

Lattice Lattice::span_columns(const IntMatrix& m)
{
    std::vector<IntVector> gens;
    gens.reserve(m.cols());
    for (size_t c = 0; c < m.cols(); ++c)
        gens.push_back(m.column(c));
    return span(m.rows(), std::move(gens));
}

Lattice Lattice::full(size_t dim)
{
    return scaled(dim, Integer(1));
}

Lattice Lattice::scaled(size_t dim, const Integer& factor)
{
    Lattice l(dim);
    if (factor.is_zero())
        return l;
    for (size_t i = 0; i < dim; ++i) {
        IntVector v(dim);
        v[i] = factor.abs();
        l.basis_.push_back(std::move(v));
        l.pivots_.push_back(i);
    }
    return l;
}

Lattice Lattice::kernel(const IntMatrix& m)
{
    return preimage(m, Lattice(m.rows()));
}

Lattice Lattice::preimage(const IntMatrix& m, const Lattice& target)
{
    if (target.ambient_dim() != m.rows())
        throw std::invalid_argument("preimage target dimension mismatch");
    // Relations among the columns of m together with the target basis; the
    // first m.cols() coordinates of each relation lie in the preimage, and
    // they span it.
    std::vector<IntVector> gens;
    gens.reserve(m.cols() + target.rank());
    for (size_t c = 0; c < m.cols(); ++c)
        gens.push_back(m.column(c));
    for (const auto& b : target.basis())
        gens.push_back(b);
    Echelon e = echelon(m.rows(), std::move(gens), true);
    std::vector<IntVector> pre;
    pre.reserve(e.relations.size());
    for (auto& rel : e.relations)
        pre.emplace_back(rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(m.cols()));
    return span(m.cols(), std::move(pre));
}

std::optional<IntVector> Lattice::coordinates(const IntVector& x) const
{
    if (x.size() != dim_)
        throw std::invalid_argument("vector length does not match lattice dimension");
    IntVector rest = x;
    IntVector coords(basis_.size());
    for (size_t j = 0; j < basis_.size(); ++j) {
        const size_t p = pivots_[j];
        if (rest[p].is_zero())
            continue;
        if (!divides(basis_[j][p], rest[p]))
            return std::nullopt;
        Integer q = rest[p] / basis_[j][p];
        for (size_t c = p; c < dim_; ++c)
            if (!basis_[j][c].is_zero())
                rest[c].submul(q, basis_[j][c]);
        coords[j] = std::move(q);
    }
    if (!all_zero(rest))
        return std::nullopt;
    return coords;
}

bool Lattice::contains(const IntVector& x) const
{
    return coordinates(x).has_value();
}

bool Lattice::contains(const Lattice& other) const
{
    if (other.dim_ != dim_)
        return false;
    for (const auto& b : other.basis_)
        if (!contains(b))
            return false;
    return true;
}

Lattice Lattice::image(const IntMatrix& m) const
{
    if (m.cols() != dim_)
        throw std::invalid_argument("lattice image dimension mismatch");
    std::vector<IntVector> gens;
    gens.reserve(basis_.size());
    for (const auto& b : basis_)
        gens.push_back(m.apply(b));
    return span(m.rows(), std::move(gens));
}

Lattice operator+(const Lattice& a, const Lattice& b)
{
    if (a.dim_ != b.dim_)
        throw std::invalid_argument("lattice sum dimension mismatch");
    std::vector<IntVector> gens = a.basis_;
    gens.insert(gens.end(), b.basis_.begin(), b.basis_.end());
    return Lattice::span(a.dim_, std::move(gens));
}

std::optional<IntVector> solve_combination(size_t dim, const std::vector<IntVector>& generators,
                                           const IntVector& target)
{
    Echelon e = echelon(dim, generators, true);
    IntVector rest = target;
    IntVector coeffs(generators.size());
    for (size_t j = 0; j < e.basis.size(); ++j) {
        const size_t p = e.pivots[j];
        if (rest[p].is_zero())
            continue;
        if (!divides(e.basis[j][p], rest[p]))
            return std::nullopt;
        Integer q = rest[p] / e.basis[j][p];
        for (size_t c = p; c < dim; ++c)
            if (!e.basis[j][c].is_zero())
                rest[c].submul(q, e.basis[j][c]);
        for (size_t g = 0; g < coeffs.size(); ++g)
            coeffs[g].addmul(q, e.basis_transform[j][g]);
    }
    if (!all_zero(rest))
        return std::nullopt;
    return coeffs;
}

}  // namespace cechb
