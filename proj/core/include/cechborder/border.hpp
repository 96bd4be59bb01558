#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cechborder/covers.hpp"
#include "cechborder/limits.hpp"

namespace cechb {

struct BorderOptions {
    int window = 3;
    // Last cover stage used; defaults to depth - 1.
    std::optional<int> horizon;
};

// A pair of full subcomplexes (total, sub) of one filtered space, given by
// vertex masks with sub inside total.
struct Level {
    std::vector<bool> total;
    std::vector<bool> sub;

    static Level of_pair(const SpacePair& pair);
    static Level absolute(std::vector<bool> total);
    static Level whole(const FilteredSpace& space);

    friend auto operator<=>(const Level&, const Level&) = default;
};

// Border (co)homology of the levels of one space over the canonical cover
// chain: at stage i the nerve of a level is the pair of full subcomplexes on
// its vertices of stage above i. Compact spaces use the one-vertex nerve at
// every stage. Stage results are cached.
class BorderEngine {
public:
    BorderEngine(std::shared_ptr<const FilteredSpace> space, Coefficients g, BorderOptions opts = {});

    const FilteredSpace& space() const noexcept { return *space_; }
    const std::shared_ptr<const FilteredSpace>& space_ptr() const noexcept { return space_; }
    const Coefficients& coefficients() const noexcept { return coeffs_; }
    const BorderOptions& options() const noexcept { return opts_; }
    int last_stage() const noexcept { return last_; }
    // Largest nerve dimension over all stages; groups above it vanish.
    int nerve_dimension() const noexcept { return nerve_dim_; }

    std::shared_ptr<const SimplicialPair> nerve(const Level& level, int stage);
    const HomologyModule& module(const Level& level, int stage, size_t n, Variant v);
    const GroupTower& tower(const Level& level, size_t n);
    const GroupChain& chain(const Level& level, size_t n);
    const LimitResult& limit(const Level& level, size_t n, Variant v);

    // Map induced by the inclusion from -> to; homology points from -> to,
    // cohomology to -> from. Throws InconclusiveError when a limit is not
    // stabilized.
    GroupHom level_map(const Level& from, const Level& to, size_t n, Variant v);
    // Homology H_n(T, S) -> H_{n-1}(S); cohomology H^{n-1}(S) -> H^n(T, S).
    GroupHom connecting(const Level& pair, size_t n, Variant v);

    // Stagewise maps of the systems above, for audits.
    std::vector<StageMap> level_stage_maps(const Level& from, const Level& to, size_t n, Variant v);
    std::vector<StageMap> connecting_stage_maps(const Level& pair, size_t n, Variant v);

private:
    struct System {
        std::vector<HomologyModule> modules;
        GroupTower tower;
        GroupChain chain;
        std::optional<LimitResult> limit;
    };
    System& system(const Level& level, size_t n, Variant v);
    void build_maps(System& s, const Level& level, Variant v);

    std::shared_ptr<const FilteredSpace> space_;
    Coefficients coeffs_;
    BorderOptions opts_;
    int last_ = 0;
    int nerve_dim_ = 0;
    std::map<std::pair<Level, int>, std::shared_ptr<const SimplicialPair>> nerves_;
    std::map<std::tuple<Level, size_t, int>, System> systems_;
};

LimitResult border_homology(const SpacePair& pair, size_t n, const Coefficients& g, const BorderOptions& opts = {});
LimitResult border_cohomology(const SpacePair& pair, size_t n, const Coefficients& g, const BorderOptions& opts = {});

// Limit of the stagewise nerve maps v -> f(v) from the source stage named by
// the properness certificate. Homology maps source -> target, cohomology
// target -> source.
GroupHom induced_infty(const ProperModelMap& f, BorderEngine& source, const Level& source_level, BorderEngine& target,
                       const Level& target_level, size_t n, Variant v);
GroupHom induced_infty(const ProperModelMap& f, size_t n, const Coefficients& g, Variant v,
                       const BorderOptions& opts = {});

struct ConnectingMap {
    LimitResult source;
    LimitResult target;
    GroupHom hom;
};

// H_n(X, A) -> H_{n-1}(A) and H^{n-1}(A) -> H^n(X, A) on the pair's own levels.
ConnectingMap boundary_infty(const SpacePair& pair, size_t n, const Coefficients& g, const BorderOptions& opts = {});
ConnectingMap coboundary_infty(const SpacePair& pair, size_t n, const Coefficients& g,
                               const BorderOptions& opts = {});

struct SequenceNode {
    std::string label;
    LimitResult group;
};

struct SequenceArrow {
    std::string label;
    std::optional<GroupHom> hom;  // absent when a neighbouring limit is inconclusive
};

struct NodeAudit {
    bool audited = false;
    bool composite_zero = false;
    bool exact = false;
};

// nodes[k] --maps[k]--> nodes[k+1]; audits[k] belongs to nodes[k].
struct SequenceReport {
    Variant variant = Variant::homology;
    std::vector<SequenceNode> nodes;
    std::vector<SequenceArrow> maps;
    std::vector<NodeAudit> audits;

    size_t audited() const;
    bool all_composites_zero() const;
    bool all_exact() const;
};

// The ladder of (X, A, B) for B inside A over degrees lo..hi, with one extra
// node at each end so every node in range is audited. The pair sequence is
// the case B empty.
SequenceReport triple_sequence(BorderEngine& engine, const std::vector<bool>& a, const std::vector<bool>& b,
                               size_t lo, size_t hi, Variant v);
SequenceReport pair_sequence(BorderEngine& engine, const std::vector<bool>& a, size_t lo, size_t hi, Variant v);
SequenceReport pair_sequence(const SpacePair& pair, const Coefficients& g, size_t lo, size_t hi, Variant v,
                             const BorderOptions& opts = {});

struct CyclicityReport {
    Variant variant = Variant::cohomology;
    int nerve_dimension = 0;
    std::vector<LimitResult> degrees;  // 0 .. nerve_dimension
    bool exact = false;                // every degree stabilized
    // Largest degree with a nonzero group, -1 when every group vanishes.
    // Without exactness the value lies in [lower, upper].
    int lower = -1;
    int upper = -1;
};

CyclicityReport cyclicity(BorderEngine& engine, const Level& level, Variant v);
CyclicityReport cyclicity(const SpacePair& pair, const Coefficients& g, Variant v, const BorderOptions& opts = {});

struct DimensionReport {
    bool small = true;
    int lower = 0;  // certified over the tested family
    int upper = 0;  // nerve dimension bound
    int witness_member = -1;  // family index behind the lower bound
    int witness_degree = -1;
    size_t tested = 0;
    size_t untested = 0;  // members with an inconclusive limit
};

// Small: 1 + the largest degree where restriction to some tested member is not
// onto. Large: the largest degree with a nonzero relative group over the
// tested members and the empty set (-1 if none). Both are bounded above by
// the nerve dimension.
DimensionReport cohdim_small(BorderEngine& engine, const Level& space, const std::vector<std::vector<bool>>& family);
DimensionReport cohdim_large(BorderEngine& engine, const Level& space, const std::vector<std::vector<bool>>& family);

}  // namespace cechb
