#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cechborder/spaces.hpp"

namespace cechb {

struct CoverMember {
    int key = 0;
    StarUnionSet set;
    bool in_sub = false;  // index lies in V^A

    friend bool operator==(const CoverMember&, const CoverMember&) = default;
};

// Finite indexed open family on a space pair, members ordered by key. Empty
// members are allowed; they are invisible to the nerve.
class BorderCover {
public:
    // Throws std::invalid_argument on duplicate keys.
    BorderCover(SpacePair pair, std::vector<CoverMember> members);

    const SpacePair& pair() const noexcept { return pair_; }
    const std::vector<CoverMember>& members() const noexcept { return members_; }
    size_t size() const noexcept { return members_.size(); }
    const CoverMember* find(int key) const;
    // Simplices lying in no member.
    SimplicialComplex enclosure() const;

    friend bool operator==(const BorderCover& a, const BorderCover& b)
    {
        return a.pair_ == b.pair_ && a.members_ == b.members_;
    }

private:
    SpacePair pair_;
    std::vector<CoverMember> members_;
};

struct BorderCheck {
    bool ok = false;
    SimplicialComplex enclosure;
    std::string reason;
};

// The enclosure must stay below the frontier stage and every A-simplex outside
// it must lie in a member indexed by V^A.
BorderCheck is_border_cover(const BorderCover& cover);

struct RefinementWitness {
    std::map<int, int> projection;  // finer key -> coarser key

    friend bool operator==(const RefinementWitness&, const RefinementWitness&) = default;
};

// Smallest admissible coarser key per finer member. The search is polynomial;
// the cap bounds the member count of either cover (std::length_error beyond).
std::optional<RefinementWitness> refines(const BorderCover& finer, const BorderCover& coarser,
                                         size_t max_members = 64);
bool verify_refinement(const BorderCover& finer, const BorderCover& coarser, const RefinementWitness& w);

struct CommonRefinement {
    BorderCover cover;
    RefinementWitness to_first;
    RefinementWitness to_second;
};

// Members a_i ∩ b_j under key i * |b| + j (positions in member order).
CommonRefinement common_refinement(const BorderCover& a, const BorderCover& b);

// Members outside the new V^A lose their part in A; the new V^A is the set
// of old V^A members meeting A.
BorderCover properize(const BorderCover& cover);
bool is_proper(const BorderCover& cover);

// f^-1 of each member with the same keys; throws NotProperError when the
// pulled-back enclosure reaches the source frontier.
BorderCover preimage_cover(const ProperModelMap& f, const BorderCover& cover);

// Nerve pair on member keys. A compact model whose members are all empty has
// the one-vertex nerve (vertex 0, in the subcomplex iff A is nonempty).
SimplicialPair nerve(const BorderCover& cover);

// Members St(v) for stage(v) > i keyed by v, V^A = A-vertices; compact models
// get the single empty member for every i.
BorderCover canonical_cover(const SpacePair& pair, int stage);
// The nerve of canonical_cover(pair, stage), built directly as the full
// subcomplex on vertices of stage above `stage`.
SimplicialPair canonical_nerve(const SpacePair& pair, int stage);
// Identity on the keys of the finer stage.
RefinementWitness canonical_witness(const SpacePair& pair, int finer_stage, int coarser_stage);

// Simplicial map of nerves sending each vertex to its projection.
SimplicialMap nerve_map(std::shared_ptr<const SimplicialPair> finer, std::shared_ptr<const SimplicialPair> coarser,
                        const RefinementWitness& w);

}  // namespace cechb
