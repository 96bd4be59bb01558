#include "cechborder/border.hpp"

#include <algorithm>

namespace cechb {

namespace {

Coefficients stage_coefficients(const Coefficients& g)
{
    return g.rational ? Coefficients::integers() : g;
}

bool any(const std::vector<bool>& m)
{
    return std::find(m.begin(), m.end(), true) != m.end();
}

bool inside(const std::vector<bool>& a, const std::vector<bool>& b)
{
    for (size_t v = 0; v < a.size(); ++v)
        if (a[v] && !b.at(v))
            return false;
    return true;
}

void check_level(const FilteredSpace& x, const Level& l)
{
    if (l.total.size() != x.vertex_count() || l.sub.size() != x.vertex_count())
        throw std::invalid_argument("level masks do not match the space");
    if (!inside(l.sub, l.total))
        throw std::invalid_argument("level sub is not inside its total");
}

LimitResult zero_limit()
{
    LimitResult z;
    z.verdict = Verdict::stabilized;
    z.stable_stage = 0;
    return z;
}

std::string pair_name(Variant v, size_t n, const std::string& pair)
{
    return std::string(v == Variant::homology ? "H_inf_" : "Hc_inf_") + std::to_string(n) + "(" + pair + ")";
}

}  // namespace

Level Level::of_pair(const SpacePair& pair)
{
    return {std::vector<bool>(pair.space().vertex_count(), true), pair.a_mask()};
}

Level Level::absolute(std::vector<bool> total)
{
    std::vector<bool> sub(total.size(), false);
    return {std::move(total), std::move(sub)};
}

Level Level::whole(const FilteredSpace& space)
{
    return absolute(std::vector<bool>(space.vertex_count(), true));
}

BorderEngine::BorderEngine(std::shared_ptr<const FilteredSpace> space, Coefficients g, BorderOptions opts)
    : space_(std::move(space)), coeffs_(std::move(g)), opts_(opts)
{
    if (!space_)
        throw std::invalid_argument("border engine needs a space");
    if (opts_.window < 1)
        throw std::invalid_argument("window must be at least 1");
    if (space_->is_compact()) {
        last_ = opts_.window;
        nerve_dim_ = 0;
        return;
    }
    last_ = opts_.horizon.value_or(space_->depth() - 1);
    if (last_ < 0 || last_ > space_->depth() - 1)
        throw std::invalid_argument("horizon must lie in 0.." + std::to_string(space_->depth() - 1));
    nerve_dim_ = std::max(0, nerve(Level::whole(*space_), 0)->dimension());
}

std::shared_ptr<const SimplicialPair> BorderEngine::nerve(const Level& level, int stage)
{
    if (stage < 0 || stage > last_)
        throw std::out_of_range("stage outside 0.." + std::to_string(last_));
    auto key = std::make_pair(level, stage);
    if (auto it = nerves_.find(key); it != nerves_.end())
        return it->second;
    check_level(*space_, level);
    std::shared_ptr<const SimplicialPair> out;
    if (space_->is_compact()) {
        const SimplicialComplex point(std::vector<Simplex>{{0}});
        out = std::make_shared<const SimplicialPair>(any(level.total) ? point : SimplicialComplex(),
                                                     any(level.sub) ? point : SimplicialComplex());
    } else {
        std::vector<Vertex> t, s;
        for (size_t v = 0; v < space_->vertex_count(); ++v) {
            if (space_->stage(static_cast<Vertex>(v)) <= stage)
                continue;
            if (level.total[v])
                t.push_back(static_cast<Vertex>(v));
            if (level.sub[v])
                s.push_back(static_cast<Vertex>(v));
        }
        const SimplicialComplex& k = space_->complex();
        out = std::make_shared<const SimplicialPair>(k.full_subcomplex(t), k.full_subcomplex(s));
    }
    nerves_.emplace(std::move(key), out);
    return out;
}

namespace {

SimplicialMap inclusion(std::shared_ptr<const SimplicialPair> from, std::shared_ptr<const SimplicialPair> to)
{
    VertexMap m;
    for (Vertex v : from->total().vertices())
        m.emplace(v, v);
    return SimplicialMap(std::move(from), std::move(to), std::move(m));
}

}  // namespace

BorderEngine::System& BorderEngine::system(const Level& level, size_t n, Variant v)
{
    auto key = std::make_tuple(level, n, static_cast<int>(v));
    if (auto it = systems_.find(key); it != systems_.end())
        return it->second;
    const Coefficients g = stage_coefficients(coeffs_);
    System s;
    for (int i = 0; i <= last_; ++i)
        s.modules.push_back(homology_module(*nerve(level, i), n, g, v));
    for (const auto& m : s.modules) {
        s.tower.stages.push_back(m.group());
        s.chain.stages.push_back(m.group());
    }
    for (int i = 0; i < last_; ++i) {
        const SimplicialMap bond = inclusion(nerve(level, i + 1), nerve(level, i));
        const GroupHom h = induced_hom(bond, s.modules[static_cast<size_t>(i) + 1], s.modules[static_cast<size_t>(i)]);
        if (v == Variant::homology)
            s.tower.maps.push_back(h);
        else
            s.chain.maps.push_back(h);
    }
    if (v == Variant::homology)
        s.limit = inverse_limit(s.tower, opts_.window, coeffs_.rational);
    else
        s.limit = direct_limit(s.chain, opts_.window, coeffs_.rational);
    return systems_.emplace(std::move(key), std::move(s)).first->second;
}

const HomologyModule& BorderEngine::module(const Level& level, int stage, size_t n, Variant v)
{
    if (stage < 0 || stage > last_)
        throw std::out_of_range("stage outside 0.." + std::to_string(last_));
    return system(level, n, v).modules[static_cast<size_t>(stage)];
}

const GroupTower& BorderEngine::tower(const Level& level, size_t n)
{
    return system(level, n, Variant::homology).tower;
}

const GroupChain& BorderEngine::chain(const Level& level, size_t n)
{
    return system(level, n, Variant::cohomology).chain;
}

const LimitResult& BorderEngine::limit(const Level& level, size_t n, Variant v)
{
    return *system(level, n, v).limit;
}

std::vector<StageMap> BorderEngine::level_stage_maps(const Level& from, const Level& to, size_t n, Variant v)
{
    if (!inside(from.total, to.total) || !inside(from.sub, to.sub))
        throw std::invalid_argument("levels are not nested");
    std::vector<StageMap> out;
    for (int i = 0; i <= last_; ++i) {
        const SimplicialMap f = inclusion(nerve(from, i), nerve(to, i));
        out.push_back({i, i, induced_hom(f, module(from, i, n, v), module(to, i, n, v))});
    }
    return out;
}

GroupHom BorderEngine::level_map(const Level& from, const Level& to, size_t n, Variant v)
{
    const auto maps = level_stage_maps(from, to, n, v);
    if (v == Variant::homology)
        return limit_map(tower(from, n), limit(from, n, v), tower(to, n), limit(to, n, v), maps);
    return limit_map(chain(to, n), limit(to, n, v), chain(from, n), limit(from, n, v), maps);
}

std::vector<StageMap> BorderEngine::connecting_stage_maps(const Level& pair, size_t n, Variant v)
{
    if (n == 0)
        throw std::invalid_argument("connecting map needs degree at least 1");
    const Level sub = Level::absolute(pair.sub);
    std::vector<StageMap> out;
    for (int i = 0; i <= last_; ++i)
        out.push_back({i, i, pair_connecting(*nerve(pair, i), module(pair, i, n, v), module(sub, i, n - 1, v))});
    return out;
}

GroupHom BorderEngine::connecting(const Level& pair, size_t n, Variant v)
{
    const auto maps = connecting_stage_maps(pair, n, v);
    const Level sub = Level::absolute(pair.sub);
    if (v == Variant::homology)
        return limit_map(tower(pair, n), limit(pair, n, v), tower(sub, n - 1), limit(sub, n - 1, v), maps);
    return limit_map(chain(sub, n - 1), limit(sub, n - 1, v), chain(pair, n), limit(pair, n, v), maps);
}

LimitResult border_homology(const SpacePair& pair, size_t n, const Coefficients& g, const BorderOptions& opts)
{
    BorderEngine e(pair.space_ptr(), g, opts);
    return e.limit(Level::of_pair(pair), n, Variant::homology);
}

LimitResult border_cohomology(const SpacePair& pair, size_t n, const Coefficients& g, const BorderOptions& opts)
{
    BorderEngine e(pair.space_ptr(), g, opts);
    return e.limit(Level::of_pair(pair), n, Variant::cohomology);
}

GroupHom induced_infty(const ProperModelMap& f, BorderEngine& source, const Level& source_level, BorderEngine& target,
                       const Level& target_level, size_t n, Variant v)
{
    if (!(source.space() == f.source().space()) || !(target.space() == f.target().space()))
        throw std::invalid_argument("engines do not match the map's spaces");
    if (!(source.coefficients() == target.coefficients()))
        throw std::invalid_argument("engines use different coefficients");
    if (!f.maps_into(source_level.total, target_level.total) || !f.maps_into(source_level.sub, target_level.sub))
        throw std::invalid_argument("map does not carry the source level into the target level");
    const bool compact_source = source.space().is_compact();
    const bool compact_target = target.space().is_compact();
    std::vector<StageMap> maps;
    for (int i = 0; i <= target.last_stage(); ++i) {
        const int k = compact_source ? std::min(i, source.last_stage()) : f.source_stage(i);
        if (k > source.last_stage())
            continue;
        auto sn = source.nerve(source_level, k);
        auto tn = target.nerve(target_level, i);
        VertexMap vm;
        for (Vertex x : sn->total().vertices())
            vm.emplace(x, compact_target ? 0 : f(x));
        const SimplicialMap m(sn, tn, std::move(vm));
        const GroupHom h = induced_hom(m, source.module(source_level, k, n, v), target.module(target_level, i, n, v));
        if (v == Variant::homology)
            maps.push_back({k, i, h});
        else
            maps.push_back({i, k, h});
    }
    if (v == Variant::homology)
        return limit_map(source.tower(source_level, n), source.limit(source_level, n, v), target.tower(target_level, n),
                         target.limit(target_level, n, v), maps);
    return limit_map(target.chain(target_level, n), target.limit(target_level, n, v), source.chain(source_level, n),
                     source.limit(source_level, n, v), maps);
}

GroupHom induced_infty(const ProperModelMap& f, size_t n, const Coefficients& g, Variant v, const BorderOptions& opts)
{
    BorderEngine s(f.source().space_ptr(), g, opts);
    BorderEngine t(f.target().space_ptr(), g, opts);
    return induced_infty(f, s, Level::of_pair(f.source()), t, Level::of_pair(f.target()), n, v);
}

namespace {

ConnectingMap connecting_infty(const SpacePair& pair, size_t n, const Coefficients& g, const BorderOptions& opts,
                               Variant v)
{
    BorderEngine e(pair.space_ptr(), g, opts);
    const Level l = Level::of_pair(pair);
    const Level a = Level::absolute(pair.a_mask());
    GroupHom h = e.connecting(l, n, v);
    if (v == Variant::homology)
        return {e.limit(l, n, v), e.limit(a, n - 1, v), std::move(h)};
    return {e.limit(a, n - 1, v), e.limit(l, n, v), std::move(h)};
}

}  // namespace

ConnectingMap boundary_infty(const SpacePair& pair, size_t n, const Coefficients& g, const BorderOptions& opts)
{
    return connecting_infty(pair, n, g, opts, Variant::homology);
}

ConnectingMap coboundary_infty(const SpacePair& pair, size_t n, const Coefficients& g, const BorderOptions& opts)
{
    return connecting_infty(pair, n, g, opts, Variant::cohomology);
}

size_t SequenceReport::audited() const
{
    return static_cast<size_t>(std::count_if(audits.begin(), audits.end(), [](const NodeAudit& a) { return a.audited; }));
}

bool SequenceReport::all_composites_zero() const
{
    return std::all_of(audits.begin(), audits.end(), [](const NodeAudit& a) { return !a.audited || a.composite_zero; });
}

bool SequenceReport::all_exact() const
{
    return std::all_of(audits.begin(), audits.end(), [](const NodeAudit& a) { return !a.audited || a.exact; });
}

SequenceReport triple_sequence(BorderEngine& engine, const std::vector<bool>& a, const std::vector<bool>& b,
                               size_t lo, size_t hi, Variant v)
{
    if (lo > hi)
        throw std::invalid_argument("empty degree range");
    const FilteredSpace& x = engine.space();
    const std::vector<bool> all(x.vertex_count(), true);
    if (a.size() != all.size() || b.size() != all.size() || !inside(b, a))
        throw std::invalid_argument("triple needs B inside A inside X");
    const Level ab{a, b}, xb{all, b}, xa{all, a}, a0 = Level::absolute(a);
    const bool relative_b = any(b);
    const std::string nab = relative_b ? "A,B" : "A", nxb = relative_b ? "X,B" : "X", nxa = "X,A";
    const bool rational = engine.coefficients().rational;

    SequenceReport r;
    r.variant = v;
    auto node = [&](const Level& l, size_t n, const std::string& name) {
        r.nodes.push_back({pair_name(v, n, name), engine.limit(l, n, v)});
    };
    auto zero_node = [&] { r.nodes.push_back({"0", zero_limit()}); };
    auto arrow = [&](const std::string& label, auto&& make) {
        std::optional<GroupHom> h;
        if (!rational) {
            try {
                h = make();
            } catch (const InconclusiveError&) {
            }
        }
        r.maps.push_back({label, std::move(h)});
    };
    auto to_zero = [&] {
        const LimitResult& prev = r.nodes.back().group;
        arrow("0", [&] {
            if (!prev.stabilized())
                throw InconclusiveError("inconclusive");
            return GroupHom::zero(prev.group, FgAbGroup());
        });
    };

    if (v == Variant::homology) {
        node(xa, hi + 1, nxa);
        for (size_t n = hi + 1; n-- > lo;) {
            arrow("d", [&] { return compose(engine.level_map(a0, ab, n, v), engine.connecting(xa, n + 1, v)); });
            node(ab, n, nab);
            arrow("i", [&] { return engine.level_map(ab, xb, n, v); });
            node(xb, n, nxb);
            arrow("j", [&] { return engine.level_map(xb, xa, n, v); });
            node(xa, n, nxa);
        }
        if (lo == 0) {
            to_zero();
            zero_node();
        } else {
            const size_t n = lo - 1;
            arrow("d", [&] { return compose(engine.level_map(a0, ab, n, v), engine.connecting(xa, lo, v)); });
            node(ab, n, nab);
        }
    } else {
        if (lo == 0) {
            zero_node();
            const LimitResult first = engine.limit(xa, 0, v);
            arrow("0", [&] {
                if (!first.stabilized())
                    throw InconclusiveError("inconclusive");
                return GroupHom::zero(FgAbGroup(), first.group);
            });
        } else {
            node(ab, lo - 1, nab);
            arrow("d", [&] { return compose(engine.connecting(xa, lo, v), engine.level_map(a0, ab, lo - 1, v)); });
        }
        for (size_t n = lo; n <= hi; ++n) {
            node(xa, n, nxa);
            arrow("j", [&] { return engine.level_map(xb, xa, n, v); });
            node(xb, n, nxb);
            arrow("i", [&] { return engine.level_map(ab, xb, n, v); });
            node(ab, n, nab);
            arrow("d", [&] { return compose(engine.connecting(xa, n + 1, v), engine.level_map(a0, ab, n, v)); });
        }
        node(xa, hi + 1, nxa);
    }

    r.audits.resize(r.nodes.size());
    for (size_t k = 1; k + 1 < r.nodes.size(); ++k) {
        const auto& in = r.maps[k - 1].hom;
        const auto& out = r.maps[k].hom;
        if (!in || !out || !r.nodes[k].group.stabilized())
            continue;
        NodeAudit& au = r.audits[k];
        au.audited = true;
        au.composite_zero = compose(*out, *in).is_zero();
        au.exact = out->kernel_lattice() == in->image_lattice();
    }
    return r;
}

SequenceReport pair_sequence(BorderEngine& engine, const std::vector<bool>& a, size_t lo, size_t hi, Variant v)
{
    return triple_sequence(engine, a, std::vector<bool>(a.size(), false), lo, hi, v);
}

SequenceReport pair_sequence(const SpacePair& pair, const Coefficients& g, size_t lo, size_t hi, Variant v,
                             const BorderOptions& opts)
{
    BorderEngine e(pair.space_ptr(), g, opts);
    return pair_sequence(e, pair.a_mask(), lo, hi, v);
}

CyclicityReport cyclicity(BorderEngine& engine, const Level& level, Variant v)
{
    CyclicityReport r;
    r.variant = v;
    r.nerve_dimension = engine.nerve_dimension();
    r.exact = true;
    for (int n = 0; n <= r.nerve_dimension; ++n) {
        const LimitResult& l = engine.limit(level, static_cast<size_t>(n), v);
        r.degrees.push_back(l);
        if (!l.stabilized()) {
            r.exact = false;
            r.upper = n;
        } else if (!l.group.is_trivial()) {
            r.lower = n;
            r.upper = n;
        }
    }
    return r;
}

CyclicityReport cyclicity(const SpacePair& pair, const Coefficients& g, Variant v, const BorderOptions& opts)
{
    BorderEngine e(pair.space_ptr(), g, opts);
    return cyclicity(e, Level::of_pair(pair), v);
}

DimensionReport cohdim_small(BorderEngine& engine, const Level& space, const std::vector<std::vector<bool>>& family)
{
    if (engine.coefficients().rational)
        throw std::invalid_argument("the small dimension needs maps and is not available over Q");
    DimensionReport r;
    r.small = true;
    r.upper = engine.nerve_dimension();
    const Level x = Level::absolute(space.total);
    for (size_t idx = 0; idx < family.size(); ++idx) {
        if (!inside(family[idx], x.total))
            throw std::invalid_argument("family member is not inside the space");
        const Level a = Level::absolute(family[idx]);
        try {
            for (int m = r.upper; m >= 0; --m) {
                if (m + 1 <= r.lower)
                    break;
                if (!engine.level_map(a, x, static_cast<size_t>(m), Variant::cohomology).is_surjective()) {
                    r.lower = m + 1;
                    r.witness_member = static_cast<int>(idx);
                    r.witness_degree = m;
                    break;
                }
            }
            ++r.tested;
        } catch (const InconclusiveError&) {
            ++r.untested;
        }
    }
    return r;
}

DimensionReport cohdim_large(BorderEngine& engine, const Level& space, const std::vector<std::vector<bool>>& family)
{
    DimensionReport r;
    r.small = false;
    r.lower = -1;
    r.upper = engine.nerve_dimension();
    std::vector<std::vector<bool>> members = family;
    members.emplace_back(space.total.size(), false);
    for (size_t idx = 0; idx < members.size(); ++idx) {
        if (!inside(members[idx], space.total))
            throw std::invalid_argument("family member is not inside the space");
        const Level l{space.total, members[idx]};
        bool conclusive = true;
        for (int n = r.upper; n > r.lower; --n) {
            const LimitResult& h = engine.limit(l, static_cast<size_t>(n), Variant::cohomology);
            if (!h.stabilized()) {
                conclusive = false;
                continue;
            }
            if (!h.group.is_trivial()) {
                r.lower = n;
                r.witness_member = idx + 1 == members.size() ? -1 : static_cast<int>(idx);
                r.witness_degree = n;
                break;
            }
        }
        ++(conclusive ? r.tested : r.untested);
    }
    return r;
}

}  // namespace cechb
