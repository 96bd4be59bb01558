#include "cechborder/limits.hpp"

#include <algorithm>
#include <optional>

namespace cechb {

namespace {

void check_window(int window)
{
    if (window < 1)
        throw std::invalid_argument("limit window must be at least 1");
}

GroupHom transported(const Subquotient& from, const Subquotient& to, const GroupHom& ambient, const char* what)
{
    GroupHom h = induced_map(from, to, ambient.matrix());
    if (!h.is_isomorphism())
        throw InconclusiveError(std::string("transport through ") + what + " is not an isomorphism");
    return h;
}

}  // namespace

void GroupTower::validate() const
{
    if (stages.empty())
        throw std::invalid_argument("tower has no stages");
    if (maps.size() + 1 != stages.size())
        throw std::invalid_argument("tower needs one map per consecutive pair of stages");
    for (size_t i = 0; i < maps.size(); ++i)
        if (!(maps[i].source() == stages[i + 1]) || !(maps[i].target() == stages[i]))
            throw std::invalid_argument("tower map " + std::to_string(i) + " does not match its stages");
}

GroupHom GroupTower::composite(int from, int to) const
{
    if (to > from || to < 0 || from > last())
        throw std::out_of_range("tower composite outside the stages");
    GroupHom h = GroupHom::identity(stages[static_cast<size_t>(from)]);
    for (int k = from - 1; k >= to; --k)
        h = compose(maps[static_cast<size_t>(k)], h);
    return h;
}

void GroupChain::validate() const
{
    if (stages.empty())
        throw std::invalid_argument("chain has no stages");
    if (maps.size() + 1 != stages.size())
        throw std::invalid_argument("chain needs one map per consecutive pair of stages");
    for (size_t i = 0; i < maps.size(); ++i)
        if (!(maps[i].source() == stages[i]) || !(maps[i].target() == stages[i + 1]))
            throw std::invalid_argument("chain map " + std::to_string(i) + " does not match its stages");
}

GroupHom GroupChain::composite(int from, int to) const
{
    if (to < from || from < 0 || to > last())
        throw std::out_of_range("chain composite outside the stages");
    GroupHom h = GroupHom::identity(stages[static_cast<size_t>(from)]);
    for (int k = from; k < to; ++k)
        h = compose(maps[static_cast<size_t>(k)], h);
    return h;
}

GroupHom rational_part(const GroupHom& h)
{
    const size_t r = h.source().free_rank(), s = h.target().free_rank();
    return GroupHom(FgAbGroup::free(r), FgAbGroup::free(s), h.matrix().block(0, 0, s, r));
}

Subquotient stable_image(const GroupTower& t, int k)
{
    const GroupHom c = t.composite(t.last(), k);
    return Subquotient(c.image_lattice(), c.target().relations());
}

LimitResult inverse_limit(const GroupTower& t, int window, bool rational)
{
    t.validate();
    check_window(window);
    LimitResult out;
    out.window = window;
    out.last_stage = t.last();
    out.rational = rational;
    const int last = t.last();
    if (last < window)
        return out;

    // Composites from the last stage, built downward.
    std::vector<GroupHom> from_last(static_cast<size_t>(last) + 1);
    from_last[static_cast<size_t>(last)] = GroupHom::identity(t.stages.back());
    for (int k = last - 1; k >= 0; --k)
        from_last[static_cast<size_t>(k)] = compose(t.maps[static_cast<size_t>(k)], from_last[static_cast<size_t>(k) + 1]);

    if (rational) {
        std::vector<size_t> r(static_cast<size_t>(last) + 1);
        for (int k = 0; k <= last; ++k)
            r[static_cast<size_t>(k)] = rational_part(from_last[static_cast<size_t>(k)]).matrix().rank();
        for (int i = 0; i + window <= last; ++i) {
            const size_t ri = r[static_cast<size_t>(i)];
            // First j whose image in G_i already has the stable rank.
            int j0 = i + 1;
            GroupHom c = rational_part(t.maps[static_cast<size_t>(i)]);
            while (c.matrix().rank() != ri) {
                c = compose(c, rational_part(t.maps[static_cast<size_t>(j0)]));
                ++j0;
            }
            bool ok = j0 + window - 1 <= last;
            for (int k = i; ok && k < i + window; ++k)
                ok = r[static_cast<size_t>(k) + 1] == ri;
            if (ok) {
                out.verdict = Verdict::stabilized;
                out.stable_stage = i;
                out.group = FgAbGroup::free(ri);
                return out;
            }
        }
        return out;
    }

    std::vector<std::optional<Subquotient>> images(static_cast<size_t>(last) + 1);
    auto image = [&](int k) -> const Subquotient& {
        auto& slot = images[static_cast<size_t>(k)];
        if (!slot) {
            const GroupHom& c = from_last[static_cast<size_t>(k)];
            slot.emplace(c.image_lattice(), c.target().relations());
        }
        return *slot;
    };
    for (int i = 0; i + window <= last; ++i) {
        int j0 = i + 1;
        GroupHom c = t.maps[static_cast<size_t>(i)];
        while (!(c.image_lattice() == image(i).numerator())) {
            c = compose(c, t.maps[static_cast<size_t>(j0)]);
            ++j0;
        }
        if (j0 + window - 1 > last)
            continue;
        bool ok = true;
        for (int k = i; ok && k < i + window; ++k)
            ok = induced_map(image(k + 1), image(k), t.maps[static_cast<size_t>(k)].matrix()).is_isomorphism();
        if (ok) {
            out.verdict = Verdict::stabilized;
            out.stable_stage = i;
            out.stable = image(i);
            out.group = out.stable.group();
            return out;
        }
    }
    return out;
}

LimitResult direct_limit(const GroupChain& c, int window, bool rational)
{
    c.validate();
    check_window(window);
    LimitResult out;
    out.window = window;
    out.last_stage = c.last();
    out.rational = rational;
    const int last = c.last();
    auto iso = [&](int k) {
        const GroupHom& h = c.maps[static_cast<size_t>(k)];
        if (!rational)
            return h.is_isomorphism();
        const GroupHom q = rational_part(h);
        return q.source().free_rank() == q.target().free_rank() && q.matrix().rank() == q.source().free_rank();
    };
    for (int i = 0; i + window <= last; ++i) {
        bool ok = true;
        for (int k = i; ok && k < i + window; ++k)
            ok = iso(k);
        if (ok) {
            const FgAbGroup& g = c.stages[static_cast<size_t>(i)];
            out.verdict = Verdict::stabilized;
            out.stable_stage = i;
            out.group = rational ? FgAbGroup::free(g.free_rank()) : g;
            if (!rational)
                out.stable = Subquotient(Lattice::full(g.generator_count()), g.relations());
            return out;
        }
    }
    return out;
}

namespace {

std::vector<StageMap> sorted_maps(std::vector<StageMap> maps)
{
    std::sort(maps.begin(), maps.end(), [](const StageMap& a, const StageMap& b) {
        return a.target_stage != b.target_stage ? a.target_stage < b.target_stage : a.source_stage < b.source_stage;
    });
    return maps;
}

void require_usable(const LimitResult& a, const LimitResult& b)
{
    if (a.rational || b.rational)
        throw std::invalid_argument("maps of rational limits are not supported");
    if (!a.stabilized() || !b.stabilized())
        throw InconclusiveError("limit map needs both limits stabilized");
}

}  // namespace

void check_commutes(const GroupTower& source, const GroupTower& target, const std::vector<StageMap>& maps)
{
    const auto ms = sorted_maps(maps);
    for (const auto& m : ms)
        if (!(m.hom.source() == source.stages.at(static_cast<size_t>(m.source_stage))) ||
            !(m.hom.target() == target.stages.at(static_cast<size_t>(m.target_stage))))
            throw std::invalid_argument("stage map does not match the system stages");
    for (size_t j = 1; j < ms.size(); ++j) {
        const StageMap &a = ms[j - 1], &b = ms[j];
        if (b.source_stage < a.source_stage)
            throw std::invalid_argument("stage maps are not monotone");
        const GroupHom left = compose(a.hom, source.composite(b.source_stage, a.source_stage));
        const GroupHom right = compose(target.composite(b.target_stage, a.target_stage), b.hom);
        if (!(left == right))
            throw std::invalid_argument("square at target stage " + std::to_string(a.target_stage) +
                                        " does not commute");
    }
}

void check_commutes(const GroupChain& source, const GroupChain& target, const std::vector<StageMap>& maps)
{
    auto ms = maps;
    std::sort(ms.begin(), ms.end(), [](const StageMap& a, const StageMap& b) {
        return a.source_stage != b.source_stage ? a.source_stage < b.source_stage : a.target_stage < b.target_stage;
    });
    for (const auto& m : ms)
        if (!(m.hom.source() == source.stages.at(static_cast<size_t>(m.source_stage))) ||
            !(m.hom.target() == target.stages.at(static_cast<size_t>(m.target_stage))))
            throw std::invalid_argument("stage map does not match the system stages");
    for (size_t j = 1; j < ms.size(); ++j) {
        const StageMap &a = ms[j - 1], &b = ms[j];
        if (b.target_stage < a.target_stage)
            throw std::invalid_argument("stage maps are not monotone");
        const GroupHom left = compose(target.composite(a.target_stage, b.target_stage), a.hom);
        const GroupHom right = compose(b.hom, source.composite(a.source_stage, b.source_stage));
        if (!(left == right))
            throw std::invalid_argument("square at source stage " + std::to_string(a.source_stage) +
                                        " does not commute");
    }
}

GroupHom limit_map(const GroupTower& source, const LimitResult& source_limit, const GroupTower& target,
                   const LimitResult& target_limit, const std::vector<StageMap>& maps)
{
    require_usable(source_limit, target_limit);
    for (const auto& m : sorted_maps(maps)) {
        if (m.target_stage < target_limit.stable_stage || m.source_stage < source_limit.stable_stage)
            continue;
        const Subquotient qs = stable_image(source, m.source_stage);
        const Subquotient qt = stable_image(target, m.target_stage);
        const GroupHom in = transported(qs, source_limit.stable,
                                        source.composite(m.source_stage, source_limit.stable_stage), "the source tower");
        const GroupHom out = transported(qt, target_limit.stable,
                                         target.composite(m.target_stage, target_limit.stable_stage), "the target tower");
        GroupHom mid;
        try {
            mid = induced_map(qs, qt, m.hom.matrix());
        } catch (const std::invalid_argument&) {
            throw InconclusiveError("stage map leaves the stable image within the truncation");
        }
        return compose(out, compose(mid, in.inverse()));
    }
    throw InconclusiveError("no stage map reaches both stable stages");
}

GroupHom limit_map(const GroupChain& source, const LimitResult& source_limit, const GroupChain& target,
                   const LimitResult& target_limit, const std::vector<StageMap>& maps)
{
    require_usable(source_limit, target_limit);
    auto ms = maps;
    std::sort(ms.begin(), ms.end(), [](const StageMap& a, const StageMap& b) {
        return a.source_stage != b.source_stage ? a.source_stage < b.source_stage : a.target_stage < b.target_stage;
    });
    for (const auto& m : ms) {
        if (m.source_stage < source_limit.stable_stage || m.target_stage < target_limit.stable_stage)
            continue;
        const GroupHom in = source.composite(source_limit.stable_stage, m.source_stage);
        const GroupHom out = target.composite(target_limit.stable_stage, m.target_stage);
        if (!in.is_isomorphism() || !out.is_isomorphism())
            throw InconclusiveError("transport through the chain is not an isomorphism");
        return compose(out.inverse(), compose(m.hom, in));
    }
    throw InconclusiveError("no stage map reaches both stable stages");
}

}  // namespace cechb
