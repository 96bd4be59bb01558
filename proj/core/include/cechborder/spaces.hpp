#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cechborder/simplicial.hpp"

namespace cechb {

// Orders labels by runs: integers (an optional leading '-' at the start of a
// run) compare numerically and sort before text runs.
bool natural_less(std::string_view a, std::string_view b);

// A finite truncation of a locally finite complex, filtered by stage. Vertex
// ids are 0..n-1 in natural label order. Vertices of stage `depth` form the
// frontier standing in for infinity; depth 0 is a compact model.
class FilteredSpace {
public:
    FilteredSpace() = default;
    // `simplices` refer to positions in `labels`; ids are reassigned in
    // natural label order. `depth` defaults to the largest stage.
    FilteredSpace(std::vector<std::string> labels, std::vector<int> stages, const std::vector<Simplex>& simplices,
                  std::optional<int> depth = std::nullopt);

    const SimplicialComplex& complex() const noexcept { return complex_; }
    size_t vertex_count() const noexcept { return labels_.size(); }
    int stage(Vertex v) const { return stages_.at(static_cast<size_t>(v)); }
    const std::string& label(Vertex v) const { return labels_.at(static_cast<size_t>(v)); }
    std::optional<Vertex> find(std::string_view label) const;
    int depth() const noexcept { return depth_; }
    bool is_compact() const noexcept { return depth_ == 0; }
    int max_stage() const noexcept;
    // Largest stage difference across an edge.
    int max_spread() const;

    friend bool operator==(const FilteredSpace& a, const FilteredSpace& b)
    {
        return a.labels_ == b.labels_ && a.stages_ == b.stages_ && a.depth_ == b.depth_ && a.complex_ == b.complex_;
    }

private:
    std::vector<std::string> labels_;
    std::vector<int> stages_;
    int depth_ = 0;
    SimplicialComplex complex_;
};

// (X, A) with A the full subcomplex on the flagged vertices.
class SpacePair {
public:
    SpacePair() = default;
    explicit SpacePair(std::shared_ptr<const FilteredSpace> space, std::vector<bool> in_a = {});

    const FilteredSpace& space() const noexcept { return *space_; }
    const std::shared_ptr<const FilteredSpace>& space_ptr() const noexcept { return space_; }
    const SimplicialComplex& complex() const noexcept { return space_->complex(); }
    bool in_a(Vertex v) const { return in_a_.at(static_cast<size_t>(v)); }
    const std::vector<bool>& a_mask() const noexcept { return in_a_; }
    std::vector<Vertex> a_vertices() const;
    bool a_empty() const;
    SimplicialComplex a_complex() const;
    SpacePair with_a(std::vector<bool> in_a) const { return SpacePair(space_, std::move(in_a)); }
    // A as a space pair of its own, (A, empty).
    SpacePair absolute() const { return SpacePair(space_); }

    friend bool operator==(const SpacePair& a, const SpacePair& b)
    {
        return (a.space_ == b.space_ || *a.space_ == *b.space_) && a.in_a_ == b.in_a_;
    }

private:
    std::shared_ptr<const FilteredSpace> space_;
    std::vector<bool> in_a_;
};

struct NotProperError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A simplicial map of pairs with a properness certificate: for every target
// stage k, bound(k) is the largest source stage mapped to stage <= k (-1 if
// none). Construction validates the map and throws NotProperError when some
// bounded target stage pulls back to the source frontier.
class ProperModelMap {
public:
    ProperModelMap(SpacePair source, SpacePair target, std::vector<Vertex> vertex_map);
    static ProperModelMap identity(const SpacePair& pair);

    const SpacePair& source() const noexcept { return source_; }
    const SpacePair& target() const noexcept { return target_; }
    const std::vector<Vertex>& vertex_map() const noexcept { return map_; }
    Vertex operator()(Vertex v) const { return map_.at(static_cast<size_t>(v)); }
    const std::vector<int>& certificate() const noexcept { return bound_; }
    // Source stage whose canonical cover refines the preimage of the target's
    // stage-k canonical cover.
    int source_stage(int target_stage) const;
    // Whether vertices flagged by `source_mask` land on vertices flagged by `target_mask`.
    bool maps_into(const std::vector<bool>& source_mask, const std::vector<bool>& target_mask) const;

private:
    SpacePair source_;
    SpacePair target_;
    std::vector<Vertex> map_;
    std::vector<int> bound_;
};

ProperModelMap compose(const ProperModelMap& g, const ProperModelMap& f);

// Open subsets of the model: unions of open stars of core simplices. The
// represented set is every simplex containing some core; cores are kept as the
// minimal such simplices, so equal sets have equal cores.
class StarUnionSet {
public:
    StarUnionSet() = default;
    // Throws std::invalid_argument for cores naming vertices outside `k`.
    StarUnionSet(const SimplicialComplex& k, std::vector<Simplex> cores);
    static StarUnionSet of_vertices(const SimplicialComplex& k, const std::vector<Vertex>& vertices);

    const std::vector<Simplex>& cores() const noexcept { return cores_; }
    bool empty() const noexcept { return cores_.empty(); }
    // Whether the open simplex s lies in the set.
    bool contains(const Simplex& s) const;
    bool subset_of(const StarUnionSet& other) const;
    // Whether the set meets the full subcomplex on the flagged vertices.
    bool meets(const std::vector<bool>& mask) const;
    std::vector<Vertex> core_vertices() const;

    friend bool operator==(const StarUnionSet&, const StarUnionSet&) = default;

private:
    std::vector<Simplex> cores_;
};

StarUnionSet intersect(const SimplicialComplex& k, const StarUnionSet& a, const StarUnionSet& b);
// a minus the full subcomplex on the flagged vertices.
StarUnionSet remove_closed(const SimplicialComplex& k, const StarUnionSet& a, const std::vector<bool>& mask);
StarUnionSet preimage(const ProperModelMap& f, const StarUnionSet& set);

enum class Example { point, compact_triangle, line, ray, plane, cylinder, two_rays_wedge };

std::vector<Example> all_examples();
std::string_view example_name(Example e);
std::optional<Example> parse_example(std::string_view name);
// Deterministic models with A empty; depth is ignored for the compact ones.
SpacePair generate_example(Example e, int depth);
SpacePair generate_example(std::string_view name, int depth);

struct Subpair {
    SpacePair pair;
    ProperModelMap inclusion;
};

// Full subcomplex on `vertices` with inherited stages and depth.
Subpair closed_subpair(const SpacePair& pair, const std::vector<Vertex>& vertices);
// (X \ U, A \ U) as full subcomplexes on the complement of U's core vertices.
// Throws std::invalid_argument naming the offending vertex when a core vertex
// or one of its neighbours is outside A.
Subpair excise(const SpacePair& pair, const StarUnionSet& u);

// Seeded sample of vertices closed upward along edges that increase the
// stage, so the result reaches the frontier whenever it reaches outward.
std::vector<bool> random_closed_mask(const FilteredSpace& space, unsigned long long seed);

}  // namespace cechb
