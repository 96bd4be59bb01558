#pragma once

#include <optional>
#include <vector>

#include "cechborder/int_matrix.hpp"

namespace cechb {

// Row echelon reduction of a list of generators with an optional record of
// the unimodular transform. Rows of `basis` are in Hermite normal form:
// strictly increasing pivot columns, positive pivots, entries above a pivot
// reduced into [0, pivot).
struct Echelon {
    std::vector<IntVector> basis;
    std::vector<size_t> pivots;
    // Coefficients expressing each basis row in terms of the input generators.
    std::vector<IntVector> basis_transform;
    // Integer relations among the generators: a lattice basis of
    // { c : sum_i c_i * gen_i = 0 }.
    std::vector<IntVector> relations;
};

Echelon echelon(size_t dim, std::vector<IntVector> generators, bool with_transform);

// A sublattice of Z^n stored by its Hermite basis, so equality is field-wise.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(size_t dim) : dim_(dim) {}

    static Lattice span(size_t dim, std::vector<IntVector> generators);
    static Lattice span_columns(const IntMatrix& m);
    static Lattice full(size_t dim);
    static Lattice scaled(size_t dim, const Integer& factor);  // factor * Z^dim

    // { x in Z^cols : m x = 0 }.
    static Lattice kernel(const IntMatrix& m);
    // { x in Z^cols : m x in target }.
    static Lattice preimage(const IntMatrix& m, const Lattice& target);

    size_t ambient_dim() const noexcept { return dim_; }
    size_t rank() const noexcept { return basis_.size(); }
    const std::vector<IntVector>& basis() const noexcept { return basis_; }
    const std::vector<size_t>& pivots() const noexcept { return pivots_; }

    bool contains(const IntVector& x) const;
    bool contains(const Lattice& other) const;
    // Coordinates of x in the Hermite basis, or nullopt when x is not in the lattice.
    std::optional<IntVector> coordinates(const IntVector& x) const;

    Lattice image(const IntMatrix& m) const;  // m applied to every basis vector

    friend Lattice operator+(const Lattice& a, const Lattice& b);
    friend bool operator==(const Lattice& a, const Lattice& b)
    {
        return a.dim_ == b.dim_ && a.basis_ == b.basis_;
    }

private:
    size_t dim_ = 0;
    std::vector<IntVector> basis_;
    std::vector<size_t> pivots_;
};

// Solves sum_i c_i * generators[i] = target over the integers.
std::optional<IntVector> solve_combination(size_t dim, const std::vector<IntVector>& generators,
                                           const IntVector& target);

}  // namespace cechb
