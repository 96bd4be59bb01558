#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cechborder/int_matrix.hpp"
#include "cechborder/lattice.hpp"

namespace cechb {

// Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk and every di >= 2.
// Canonical generators are ordered free summands first, then torsion.
class FgAbGroup {
public:
    FgAbGroup() = default;
    // Accepts any list of cyclic orders (0 meaning Z, 1 ignored) and
    // recombines them into invariant factors.
    static FgAbGroup from_cyclic(const std::vector<Integer>& orders);
    static FgAbGroup free(size_t rank);
    static FgAbGroup cyclic(const Integer& order);  // order 0 gives Z

    size_t free_rank() const noexcept { return free_rank_; }
    const std::vector<Integer>& torsion() const noexcept { return torsion_; }
    size_t generator_count() const noexcept { return free_rank_ + torsion_.size(); }
    // Order of canonical generator j; 0 for free generators.
    Integer generator_order(size_t j) const;
    bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
    bool is_finite() const noexcept { return free_rank_ == 0; }

    // Relation lattice of the canonical presentation inside Z^generator_count.
    Lattice relations() const;
    // Reduces torsion coordinates into [0, d).
    IntVector normalize(IntVector coords) const;

    // `Z^r + Z/d1 + ...`, `Z` for rank one and `0` for the trivial group.
    std::string render() const;
    std::string render_rational() const;  // the same rank as a Q-vector space

    friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

private:
    size_t free_rank_ = 0;
    std::vector<Integer> torsion_;
};

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup group_from_presentation(size_t generators, const IntMatrix& relations);
bool iso_check(const FgAbGroup& a, const FgAbGroup& b);

FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup tor(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup hom(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup ext(const FgAbGroup& a, const FgAbGroup& b);

enum class Variant { homology, cohomology };

std::string_view to_string(Variant v);

// (H_n (x) G) + Tor(H_{n-1}, G), or Hom(H_n, G) + Ext(H_{n-1}, G).
FgAbGroup uct_coefficients(const FgAbGroup& h_n, const FgAbGroup& h_nminus1, const FgAbGroup& g, Variant v);

// A homomorphism between canonical groups. Column j of `matrix` holds the
// image of source generator j in target canonical coordinates.
class GroupHom {
public:
    GroupHom() = default;
    // Validates that torsion is respected and reduces torsion rows; throws
    // std::invalid_argument for malformed input.
    GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

    static GroupHom identity(const FgAbGroup& g);
    static GroupHom zero(const FgAbGroup& source, const FgAbGroup& target);

    const FgAbGroup& source() const noexcept { return source_; }
    const FgAbGroup& target() const noexcept { return target_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    IntVector apply(const IntVector& x) const;

    bool is_zero() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_isomorphism() const { return is_injective() && is_surjective(); }

    // Lattices in the source / target canonical coordinates containing the
    // respective relation lattices.
    Lattice kernel_lattice() const;
    Lattice image_lattice() const;

    // Inverse of an isomorphism; throws std::invalid_argument otherwise.
    GroupHom inverse() const;

    friend bool operator==(const GroupHom&, const GroupHom&) = default;

private:
    FgAbGroup source_;
    FgAbGroup target_;
    IntMatrix matrix_;
};

// g o f
GroupHom compose(const GroupHom& g, const GroupHom& f);

struct KernelImageCokernel {
    FgAbGroup kernel;
    FgAbGroup image;
    FgAbGroup cokernel;
};

KernelImageCokernel hom_kernel_image_cokernel(const GroupHom& h);

// numerator / denominator for lattices denominator <= numerator <= Z^n, with
// a fixed identification with a canonical group.
class Subquotient {
public:
    Subquotient() = default;
    Subquotient(Lattice numerator, Lattice denominator);

    const FgAbGroup& group() const noexcept { return group_; }
    const Lattice& numerator() const noexcept { return numerator_; }
    const Lattice& denominator() const noexcept { return denominator_; }
    size_t ambient_dim() const noexcept { return numerator_.ambient_dim(); }

    // Canonical coordinates of the class of x; throws if x is outside the numerator.
    IntVector coordinates(const IntVector& x) const;
    bool contains(const IntVector& x) const { return numerator_.contains(x); }
    // Ambient representative of canonical generator j.
    const IntVector& generator(size_t j) const { return generators_[j]; }

private:
    Lattice numerator_;
    Lattice denominator_;
    FgAbGroup group_;
    IntMatrix to_canonical_;  // rows of U selected in canonical order
    std::vector<IntVector> generators_;
};

// The homomorphism induced by an ambient-level map that carries numerator to
// numerator and denominator to denominator; throws std::invalid_argument otherwise.
GroupHom induced_map(const Subquotient& source, const Subquotient& target, const IntMatrix& ambient_map);

// A subgroup of a canonical group, as the canonical form of lattice / relations.
Subquotient subgroup(const FgAbGroup& g, const Lattice& lattice_with_relations);

// Coefficient groups: finitely generated abelian G, or the rationals.
struct Coefficients {
    FgAbGroup group = FgAbGroup::free(1);
    bool rational = false;

    static Coefficients integers() { return {}; }
    static Coefficients mod(const Integer& m) { return {FgAbGroup::cyclic(m), false}; }
    static Coefficients rationals() { return {FgAbGroup::free(1), true}; }
    // Grammar: summands `Z`, `Z/<m>` (m >= 2), `Z^<r>` joined by `+`, or `Q`.
    static Coefficients parse(std::string_view text);

    // Cyclic summands of the canonical decomposition, 0 standing for Z.
    std::vector<Integer> cyclic_orders() const;
    std::string render() const;
    // Renders a group computed with these coefficients (Q-ranks as `Q^r`).
    std::string render_value(const FgAbGroup& value) const;

    friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

}  // namespace cechb
