#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cechborder/abelian.hpp"

namespace cechb {

using Vertex = int;
using Simplex = std::vector<Vertex>;  // strictly increasing vertex ids

struct SimplexHash {
    size_t operator()(const Simplex& s) const noexcept;
};

// Finite simplicial complex, closed under faces, immutable once built.
// Simplices of each dimension are kept in lexicographic order, which fixes
// chain bases and orientations.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    // Adds all nonempty faces of every listed simplex; lists need not be sorted.
    explicit SimplicialComplex(const std::vector<Simplex>& simplices);

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    int dimension() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<Simplex>& simplices(size_t n) const;
    size_t count(size_t n) const { return n < by_dim_.size() ? by_dim_[n].size() : 0; }
    size_t size() const noexcept { return index_.size(); }
    bool empty() const noexcept { return vertices_.empty(); }

    bool contains(const Simplex& s) const { return index_.contains(s); }
    bool has_vertex(Vertex v) const { return index_.contains(Simplex{v}); }
    std::optional<size_t> index(const Simplex& s) const;

    SimplicialComplex full_subcomplex(const std::vector<Vertex>& vertices) const;
    SimplicialComplex filter(const std::function<bool(const Simplex&)>& keep) const;  // keep must be face-closed
    bool is_subcomplex_of(const SimplicialComplex& other) const;
    // Vertices adjacent to v by an edge.
    std::vector<Vertex> neighbors(Vertex v) const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.by_dim_ == b.by_dim_;
    }

private:
    std::vector<Vertex> vertices_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::unordered_map<Simplex, size_t, SimplexHash> index_;
};

// (total, sub) with sub a subcomplex; relative chains use the simplices of
// total that are not in sub.
class SimplicialPair {
public:
    SimplicialPair() = default;
    explicit SimplicialPair(SimplicialComplex total) : SimplicialPair(std::move(total), SimplicialComplex()) {}
    SimplicialPair(SimplicialComplex total, SimplicialComplex sub);

    const SimplicialComplex& total() const noexcept { return total_; }
    const SimplicialComplex& sub() const noexcept { return sub_; }
    int dimension() const noexcept { return total_.dimension(); }

    const std::vector<Simplex>& relative_simplices(size_t n) const;
    size_t relative_count(size_t n) const { return n < relative_.size() ? relative_[n].size() : 0; }
    std::optional<size_t> relative_index(const Simplex& s) const;

    friend bool operator==(const SimplicialPair& a, const SimplicialPair& b)
    {
        return a.total_ == b.total_ && a.sub_ == b.sub_;
    }

private:
    SimplicialComplex total_;
    SimplicialComplex sub_;
    std::vector<std::vector<Simplex>> relative_;
    std::unordered_map<Simplex, size_t, SimplexHash> relative_index_;
};

using VertexMap = std::unordered_map<Vertex, Vertex>;

// Vertex map between pairs; construction validates that simplices go to
// simplices and sub into sub, throwing std::invalid_argument otherwise.
class SimplicialMap {
public:
    SimplicialMap(std::shared_ptr<const SimplicialPair> source, std::shared_ptr<const SimplicialPair> target,
                  VertexMap vertex_map);

    static SimplicialMap identity(std::shared_ptr<const SimplicialPair> pair);

    const SimplicialPair& source() const noexcept { return *source_; }
    const SimplicialPair& target() const noexcept { return *target_; }
    const std::shared_ptr<const SimplicialPair>& source_ptr() const noexcept { return source_; }
    const std::shared_ptr<const SimplicialPair>& target_ptr() const noexcept { return target_; }
    const VertexMap& vertex_map() const noexcept { return map_; }
    Vertex operator()(Vertex v) const { return map_.at(v); }
    // Vertex set of the image, sorted and deduplicated.
    Simplex image(const Simplex& s) const;

private:
    std::shared_ptr<const SimplicialPair> source_;
    std::shared_ptr<const SimplicialPair> target_;
    VertexMap map_;
};

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

// Relative boundary operators d_0 .. d_max_degree; d_n has one row per
// relative (n-1)-simplex and one column per relative n-simplex.
std::vector<IntMatrix> boundary_matrices(const SimplicialPair& pair, size_t max_degree);
IntMatrix boundary_matrix(const SimplicialPair& pair, size_t n);

// Chain map C_n(source) -> C_n(target) on relative bases.
IntMatrix chain_map(const SimplicialMap& f, size_t n);

// The (co)homology group in degree n together with its generators, as a
// subquotient of (relative chains)^(number of cyclic summands of G).
struct HomologyModule {
    Subquotient quotient;
    size_t degree = 0;
    size_t chain_rank = 0;
    size_t summands = 0;
    Variant variant = Variant::homology;
    const FgAbGroup& group() const { return quotient.group(); }
};

// Integral coefficients only (G a finitely generated group; Q is rejected).
HomologyModule homology_module(const SimplicialPair& pair, size_t n, const Coefficients& g, Variant v);

// Group values via the integral groups and universal coefficients; Q gives
// a free group whose rank is the rational dimension.
FgAbGroup homology(const SimplicialPair& pair, size_t n, const Coefficients& g);
FgAbGroup cohomology(const SimplicialPair& pair, size_t n, const Coefficients& g);
// Direct computation over the prime field F_2 by rank, kept as a cross-check.
size_t mod2_betti(const SimplicialPair& pair, size_t n);

GroupHom induced_hom(const SimplicialMap& f, size_t n, const Coefficients& g, Variant v);
// Induced map between precomputed modules of f's source and target; the
// cohomology variant points from `target` to `source`.
GroupHom induced_hom(const SimplicialMap& f, const HomologyModule& source, const HomologyModule& target);

bool contiguous(const SimplicialMap& f, const SimplicialMap& g);

// Chain-level connecting operator: rows are the (n-1)-simplices of sub,
// columns are the relative n-simplices, entries are boundary coefficients.
IntMatrix connecting_chain_matrix(const SimplicialPair& pair, size_t n);

// d: H_n(total, sub) -> H_{n-1}(sub), or d: H^{n-1}(sub) -> H^n(total, sub).
GroupHom pair_connecting(const SimplicialPair& pair, size_t n, const Coefficients& g, Variant v);
// Same operator between precomputed modules: `pair_module` in degree n and
// `sub_module` of (sub, empty) in degree n - 1.
GroupHom pair_connecting(const SimplicialPair& pair, const HomologyModule& pair_module,
                         const HomologyModule& sub_module);

}  // namespace cechb
