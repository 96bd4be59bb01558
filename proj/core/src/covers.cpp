#include "cechborder/covers.hpp"

#include <algorithm>
#include <stdexcept>

namespace cechb {

BorderCover::BorderCover(SpacePair pair, std::vector<CoverMember> members)
    : pair_(std::move(pair)), members_(std::move(members))
{
    std::sort(members_.begin(), members_.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    for (size_t i = 1; i < members_.size(); ++i)
        if (members_[i].key == members_[i - 1].key)
            throw std::invalid_argument("duplicate cover key " + std::to_string(members_[i].key));
}

const CoverMember* BorderCover::find(int key) const
{
    auto it = std::lower_bound(members_.begin(), members_.end(), key,
                               [](const CoverMember& m, int k) { return m.key < k; });
    return it != members_.end() && it->key == key ? &*it : nullptr;
}

SimplicialComplex BorderCover::enclosure() const
{
    return pair_.complex().filter([&](const Simplex& s) {
        return std::none_of(members_.begin(), members_.end(), [&](const CoverMember& m) { return m.set.contains(s); });
    });
}

BorderCheck is_border_cover(const BorderCover& cover)
{
    BorderCheck out;
    out.enclosure = cover.enclosure();
    const FilteredSpace& x = cover.pair().space();
    if (!x.is_compact())
        for (Vertex v : out.enclosure.vertices())
            if (x.stage(v) >= x.depth()) {
                out.reason = "enclosure reaches the frontier at vertex '" + x.label(v) + "'";
                return out;
            }
    const SimplicialComplex a = cover.pair().a_complex();
    for (int n = 0; n <= a.dimension(); ++n)
        for (const auto& s : a.simplices(static_cast<size_t>(n))) {
            if (out.enclosure.contains(s))
                continue;
            const bool covered = std::any_of(cover.members().begin(), cover.members().end(),
                                             [&](const CoverMember& m) { return m.in_sub && m.set.contains(s); });
            if (!covered) {
                out.reason = "A-simplex at vertex '" + x.label(s[0]) + "' lies outside the V^A members";
                return out;
            }
        }
    out.ok = true;
    return out;
}

namespace {

void require_same_pair(const BorderCover& a, const BorderCover& b)
{
    if (!(a.pair() == b.pair()))
        throw std::invalid_argument("covers live on different pairs");
}

}  // namespace

std::optional<RefinementWitness> refines(const BorderCover& finer, const BorderCover& coarser, size_t max_members)
{
    require_same_pair(finer, coarser);
    if (finer.size() > max_members || coarser.size() > max_members)
        throw std::length_error("cover exceeds the member cap of " + std::to_string(max_members));
    RefinementWitness w;
    for (const auto& b : finer.members()) {
        auto it = std::find_if(coarser.members().begin(), coarser.members().end(), [&](const CoverMember& a) {
            return (!b.in_sub || a.in_sub) && b.set.subset_of(a.set);
        });
        if (it == coarser.members().end())
            return std::nullopt;
        w.projection.emplace(b.key, it->key);
    }
    return w;
}

bool verify_refinement(const BorderCover& finer, const BorderCover& coarser, const RefinementWitness& w)
{
    if (!(finer.pair() == coarser.pair()) || w.projection.size() != finer.size())
        return false;
    for (const auto& b : finer.members()) {
        auto it = w.projection.find(b.key);
        if (it == w.projection.end())
            return false;
        const CoverMember* a = coarser.find(it->second);
        if (!a || (b.in_sub && !a->in_sub) || !b.set.subset_of(a->set))
            return false;
    }
    return true;
}

CommonRefinement common_refinement(const BorderCover& a, const BorderCover& b)
{
    require_same_pair(a, b);
    const SimplicialComplex& k = a.pair().complex();
    std::vector<CoverMember> members;
    RefinementWitness wa, wb;
    const int nb = static_cast<int>(b.size());
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
        for (int j = 0; j < nb; ++j) {
            const auto& x = a.members()[static_cast<size_t>(i)];
            const auto& y = b.members()[static_cast<size_t>(j)];
            const int key = i * nb + j;
            members.push_back({key, intersect(k, x.set, y.set), x.in_sub && y.in_sub});
            wa.projection.emplace(key, x.key);
            wb.projection.emplace(key, y.key);
        }
    return {BorderCover(a.pair(), std::move(members)), std::move(wa), std::move(wb)};
}

BorderCover properize(const BorderCover& cover)
{
    const auto& mask = cover.pair().a_mask();
    const SimplicialComplex& k = cover.pair().complex();
    std::vector<CoverMember> out;
    for (const auto& m : cover.members()) {
        const bool keep = m.in_sub && m.set.meets(mask);
        out.push_back({m.key, keep ? m.set : remove_closed(k, m.set, mask), keep});
    }
    return BorderCover(cover.pair(), std::move(out));
}

bool is_proper(const BorderCover& cover)
{
    const auto& mask = cover.pair().a_mask();
    return std::all_of(cover.members().begin(), cover.members().end(),
                       [&](const CoverMember& m) { return m.in_sub == m.set.meets(mask); });
}

BorderCover preimage_cover(const ProperModelMap& f, const BorderCover& cover)
{
    if (!(f.target() == cover.pair()))
        throw std::invalid_argument("cover does not live on the target of the map");
    std::vector<CoverMember> out;
    for (const auto& m : cover.members())
        out.push_back({m.key, preimage(f, m.set), m.in_sub});
    BorderCover pulled(f.source(), std::move(out));
    const BorderCheck check = is_border_cover(pulled);
    if (!check.ok)
        throw NotProperError("preimage cover is not a border cover: " + check.reason);
    return pulled;
}

namespace {

struct NerveBuilder {
    const SimplicialComplex& k;
    const std::vector<bool>& mask;
    const std::vector<const CoverMember*>& members;
    std::vector<Simplex> total, sub;

    void extend(Simplex& keys, const StarUnionSet& meet, bool all_sub, size_t next)
    {
        for (size_t j = next; j < members.size(); ++j) {
            StarUnionSet m = intersect(k, meet, members[j]->set);
            if (m.empty())
                continue;
            keys.push_back(members[j]->key);
            const bool s = all_sub && members[j]->in_sub;
            total.push_back(keys);
            if (s && m.meets(mask))
                sub.push_back(keys);
            extend(keys, m, s, j + 1);
            keys.pop_back();
        }
    }
};

}  // namespace

SimplicialPair nerve(const BorderCover& cover)
{
    const SpacePair& pair = cover.pair();
    std::vector<const CoverMember*> live;
    for (const auto& m : cover.members())
        if (!m.set.empty())
            live.push_back(&m);
    if (live.empty() && pair.space().is_compact()) {
        SimplicialComplex point(std::vector<Simplex>{{0}});
        return SimplicialPair(point, pair.a_empty() ? SimplicialComplex() : point);
    }
    NerveBuilder b{pair.complex(), pair.a_mask(), live, {}, {}};
    for (size_t i = 0; i < live.size(); ++i) {
        Simplex keys{live[i]->key};
        b.total.push_back(keys);
        const bool s = live[i]->in_sub;
        if (s && live[i]->set.meets(pair.a_mask()))
            b.sub.push_back(keys);
        b.extend(keys, live[i]->set, s, i + 1);
    }
    return SimplicialPair(SimplicialComplex(b.total), SimplicialComplex(b.sub));
}

BorderCover canonical_cover(const SpacePair& pair, int stage)
{
    const FilteredSpace& x = pair.space();
    if (x.is_compact())
        return BorderCover(pair, {{0, StarUnionSet(), !pair.a_empty()}});
    if (stage < 0 || stage >= x.depth())
        throw std::out_of_range("cover stage outside 0.." + std::to_string(x.depth() - 1));
    std::vector<CoverMember> members;
    for (size_t v = 0; v < x.vertex_count(); ++v) {
        const Vertex u = static_cast<Vertex>(v);
        if (x.stage(u) > stage)
            members.push_back({u, StarUnionSet(x.complex(), {{u}}), pair.in_a(u)});
    }
    return BorderCover(pair, std::move(members));
}

SimplicialPair canonical_nerve(const SpacePair& pair, int stage)
{
    const FilteredSpace& x = pair.space();
    if (x.is_compact()) {
        SimplicialComplex point(std::vector<Simplex>{{0}});
        return SimplicialPair(point, pair.a_empty() ? SimplicialComplex() : point);
    }
    if (stage < 0 || stage >= x.depth())
        throw std::out_of_range("cover stage outside 0.." + std::to_string(x.depth() - 1));
    std::vector<Vertex> outer, outer_a;
    for (size_t v = 0; v < x.vertex_count(); ++v) {
        const Vertex u = static_cast<Vertex>(v);
        if (x.stage(u) > stage) {
            outer.push_back(u);
            if (pair.in_a(u))
                outer_a.push_back(u);
        }
    }
    return SimplicialPair(x.complex().full_subcomplex(outer), x.complex().full_subcomplex(outer_a));
}

RefinementWitness canonical_witness(const SpacePair& pair, int finer_stage, int coarser_stage)
{
    const FilteredSpace& x = pair.space();
    RefinementWitness w;
    if (x.is_compact()) {
        w.projection.emplace(0, 0);
        return w;
    }
    if (finer_stage < coarser_stage)
        throw std::invalid_argument("canonical covers refine only toward lower stages");
    for (size_t v = 0; v < x.vertex_count(); ++v)
        if (x.stage(static_cast<Vertex>(v)) > finer_stage)
            w.projection.emplace(static_cast<Vertex>(v), static_cast<Vertex>(v));
    return w;
}

SimplicialMap nerve_map(std::shared_ptr<const SimplicialPair> finer, std::shared_ptr<const SimplicialPair> coarser,
                        const RefinementWitness& w)
{
    VertexMap m;
    for (Vertex v : finer->total().vertices()) {
        auto it = w.projection.find(v);
        if (it == w.projection.end())
            throw std::invalid_argument("witness misses nerve vertex " + std::to_string(v));
        m.emplace(v, it->second);
    }
    return SimplicialMap(std::move(finer), std::move(coarser), std::move(m));
}

}  // namespace cechb
