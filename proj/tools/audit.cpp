#include "audit.hpp"

#include <functional>
#include <map>
#include <memory>
#include <sstream>

namespace cechb::cli {

namespace {

using Pred = std::function<bool(const std::string&)>;

std::vector<bool> mask_where(const SpacePair& p, const Pred& pred)
{
    std::vector<bool> m(p.space().vertex_count());
    for (size_t v = 0; v < m.size(); ++v)
        m[v] = pred(p.space().label(static_cast<Vertex>(v)));
    return m;
}

std::vector<Vertex> where(const SpacePair& p, const Pred& pred)
{
    std::vector<Vertex> out;
    for (size_t v = 0; v < p.space().vertex_count(); ++v)
        if (pred(p.space().label(static_cast<Vertex>(v))))
            out.push_back(static_cast<Vertex>(v));
    return out;
}

int coord(const std::string& s, int which)
{
    const auto comma = s.find(',');
    return std::stoi(which == 0 ? s.substr(0, comma) : s.substr(comma + 1));
}

int num(const std::string& s)
{
    return std::stoi(s);
}

// Branch labels of the wedge are "0", "a<k>", "b<k>".
int branch_index(const std::string& s)
{
    return s == "0" ? 0 : std::stoi(s.substr(1));
}

std::string xy(int x, int y)
{
    return std::to_string(x) + "," + std::to_string(y);
}

ProperModelMap by_label(const SpacePair& src, const SpacePair& tgt, const std::function<std::string(const std::string&)>& f)
{
    std::vector<Vertex> m;
    for (size_t v = 0; v < src.space().vertex_count(); ++v) {
        const std::string image = f(src.space().label(static_cast<Vertex>(v)));
        auto id = tgt.space().find(image);
        if (!id)
            throw std::logic_error("fixture map misses vertex " + image);
        m.push_back(*id);
    }
    return ProperModelMap(src, tgt, m);
}

size_t count(const std::vector<bool>& m)
{
    return static_cast<size_t>(std::count(m.begin(), m.end(), true));
}

std::vector<bool> meet(std::vector<bool> a, const std::vector<bool>& b)
{
    for (size_t v = 0; v < a.size(); ++v)
        a[v] = a[v] && b[v];
    return a;
}

// Shared spaces so engines and maps agree on identity.
struct Spaces {
    int depth;
    std::map<Example, SpacePair> pairs;

    explicit Spaces(int d) : depth(d)
    {
        for (Example e : all_examples())
            pairs.emplace(e, generate_example(e, e == Example::point || e == Example::compact_triangle ? 0 : d));
    }
    const SpacePair& operator[](Example e) const { return pairs.at(e); }
};

class Engines {
public:
    Engines(const Coefficients& g, const BorderOptions& o) : g_(g), o_(o) {}
    BorderEngine& operator()(const SpacePair& p)
    {
        auto it = engines_.find(&p.space());
        if (it == engines_.end())
            it = engines_.emplace(&p.space(), std::make_unique<BorderEngine>(p.space_ptr(), g_, o_)).first;
        return *it->second;
    }

private:
    Coefficients g_;
    BorderOptions o_;
    std::map<const FilteredSpace*, std::unique_ptr<BorderEngine>> engines_;
};

bool selected(const AuditOptions& o, std::initializer_list<Example> uses)
{
    if (!o.example)
        return true;
    return std::find(uses.begin(), uses.end(), *o.example) != uses.end();
}

struct PairMap {
    std::string name;
    Example source, target;
    ProperModelMap map;
};

std::vector<PairMap> maps_of_pairs(const Spaces& s)
{
    auto line = s[Example::line], ray = s[Example::ray], plane = s[Example::plane], cyl = s[Example::cylinder],
         wedge = s[Example::two_rays_wedge];
    auto line_a = line.with_a(mask_where(line, [](const std::string& l) { return std::abs(num(l)) >= 2; }));
    auto ray_a = ray.with_a(mask_where(ray, [](const std::string& l) { return num(l) >= 2; }));
    auto quad = plane.with_a(mask_where(plane, [](const std::string& l) {
        return (coord(l, 0) >= 1 && coord(l, 1) >= 1) || (coord(l, 0) <= -1 && coord(l, 1) <= -1);
    }));
    auto cyl_a = cyl.with_a(mask_where(cyl, [](const std::string& l) { return coord(l, 1) <= 0; }));
    auto wedge_a = wedge.with_a(mask_where(wedge, [](const std::string& l) { return branch_index(l) >= 2; }));

    std::vector<PairMap> out;
    out.push_back({"reflect_quadrants", Example::plane, Example::plane,
                   by_label(quad, quad, [](const std::string& l) { return xy(-coord(l, 0), -coord(l, 1)); })});
    out.push_back({"negate_outer_thirds", Example::line, Example::line,
                   by_label(line_a, line_a, [](const std::string& l) { return std::to_string(-num(l)); })});
    out.push_back({"shift_lower_half", Example::cylinder, Example::cylinder, by_label(cyl_a, cyl_a, [](const std::string& l) {
                       return std::to_string((coord(l, 0) + 1) % 4) + "," + std::to_string(coord(l, 1));
                   })});
    out.push_back({"include_tail", Example::ray, Example::line,
                   by_label(ray_a, line_a, [](const std::string& l) { return l; })});
    out.push_back({"fold_outer_thirds", Example::line, Example::ray, by_label(line_a, ray_a, [](const std::string& l) {
                       return std::to_string(std::abs(num(l)));
                   })});
    out.push_back({"swap_branch_tails", Example::two_rays_wedge, Example::two_rays_wedge,
                   by_label(wedge_a, wedge_a, [](const std::string& l) {
                       return l == "0" ? l : std::string(l[0] == 'a' ? "b" : "a") + l.substr(1);
                   })});
    return out;
}

std::string status(size_t good, size_t total)
{
    return std::to_string(good) + "/" + std::to_string(total);
}

std::vector<AuditLine> compact_suite(const AuditOptions& o)
{
    std::vector<AuditLine> out;
    for (Example e : {Example::point, Example::compact_triangle}) {
        if (!selected(o, {e}))
            continue;
        const auto p = generate_example(e, 0);
        for (const char* text : {"Z", "Z/2", "Z/3", "Z/2+Z", "Q"}) {
            const Coefficients g = Coefficients::parse(text);
            const std::string expected = g.rational ? "Q" : g.group.render();
            BorderEngine engine(p.space_ptr(), g, o.border);
            const Level all = Level::of_pair(p);
            bool ok = true;
            std::ostringstream d;
            for (size_t n = 0; n <= 3; ++n)
                for (Variant v : {Variant::homology, Variant::cohomology}) {
                    const LimitResult& r = engine.limit(all, n, v);
                    const std::string got = r.stabilized() ? g.render_value(r.group) : "inconclusive";
                    if (got != (n == 0 ? expected : "0")) {
                        ok = false;
                        d << (v == Variant::homology ? " H_inf_" : " Hc_inf_") << n << "=" << got;
                    }
                }
            out.push_back({"compact", std::string(example_name(e)) + ".G=" + text, ok,
                           ok ? "degree 0 = " + expected + ", degrees 1..3 = 0" : "unexpected:" + d.str()});
        }
    }
    return out;
}

AuditLine law(const std::string& subject, const std::vector<std::string>& broken, size_t checked)
{
    return {"functoriality", subject, broken.empty(),
            broken.empty() ? "holds in " + std::to_string(checked) + " degree/variant cases"
                           : "fails at " + [&] {
                                 std::string s;
                                 for (const auto& b : broken)
                                     s += (s.empty() ? "" : ", ") + b;
                                 return s;
                             }()};
}

std::string case_name(Variant v, size_t n)
{
    return std::string(v == Variant::homology ? "H" : "Hc") + std::to_string(n);
}

std::vector<AuditLine> functoriality_suite(const AuditOptions& o)
{
    const Spaces s(o.depth);
    Engines engines(Coefficients::integers(), o.border);
    std::vector<AuditLine> out;
    auto induced = [&](const ProperModelMap& f, size_t n, Variant v) {
        return induced_infty(f, engines(f.source()), Level::of_pair(f.source()), engines(f.target()),
                             Level::of_pair(f.target()), n, v);
    };

    for (Example e : all_examples()) {
        if (!selected(o, {e}))
            continue;
        const auto id = ProperModelMap::identity(s[e]);
        std::vector<std::string> broken;
        size_t checked = 0;
        for (size_t n = 0; n <= 2; ++n)
            for (Variant v : {Variant::homology, Variant::cohomology}) {
                ++checked;
                try {
                    const GroupHom h = induced(id, n, v);
                    if (!(h == GroupHom::identity(h.source())))
                        broken.push_back(case_name(v, n));
                } catch (const InconclusiveError&) {
                    broken.push_back(case_name(v, n) + " inconclusive");
                }
            }
        out.push_back(law("identity." + std::string(example_name(e)), broken, checked));
    }

    const auto maps = fixture_maps(o.depth);
    auto find = [&](const std::string& name) -> const ProperModelMap& {
        for (const auto& m : maps)
            if (m.name == name)
                return m.map;
        throw std::logic_error("no fixture map " + name);
    };
    struct Pair {
        const char* g;
        const char* f;
        std::initializer_list<Example> uses;
    };
    const std::vector<Pair> pairs = {
        {"fold", "include", {Example::ray, Example::line}},
        {"include", "fold", {Example::ray, Example::line}},
        {"negate", "include", {Example::ray, Example::line}},
        {"swap", "reflect", {Example::plane}},
        {"swap", "swap", {Example::plane}},
        {"shift", "flip", {Example::cylinder}},
        {"shift", "shift", {Example::cylinder}},
        {"squash", "swap_branches", {Example::two_rays_wedge, Example::ray}},
        {"collapse", "collapse", {Example::compact_triangle}},
    };
    for (const auto& pr : pairs) {
        if (!selected(o, pr.uses))
            continue;
        const ProperModelMap& g0 = find(pr.g);
        const ProperModelMap& f0 = find(pr.f);
        const ProperModelMap gf = compose(g0, f0);
        std::vector<std::string> broken;
        size_t checked = 0;
        for (size_t n = 0; n <= 2; ++n)
            for (Variant v : {Variant::homology, Variant::cohomology}) {
                ++checked;
                try {
                    const GroupHom a = induced(f0, n, v), b = induced(g0, n, v), ab = induced(gf, n, v);
                    if (!(ab == (v == Variant::homology ? compose(b, a) : compose(a, b))))
                        broken.push_back(case_name(v, n));
                } catch (const InconclusiveError&) {
                    broken.push_back(case_name(v, n) + " inconclusive");
                }
            }
        out.push_back(law(std::string("compose.") + pr.g + "_after_" + pr.f, broken, checked));
    }
    return out;
}

std::vector<AuditLine> naturality_suite(const AuditOptions& o)
{
    const Spaces s(o.depth);
    Engines engines(Coefficients::integers(), o.border);
    std::vector<AuditLine> out;
    for (const auto& pm : maps_of_pairs(s)) {
        if (!selected(o, {pm.source, pm.target}))
            continue;
        const ProperModelMap& f = pm.map;
        BorderEngine& ex = engines(f.source());
        BorderEngine& ey = engines(f.target());
        const Level px = Level::of_pair(f.source()), py = Level::of_pair(f.target());
        const Level ax = Level::absolute(f.source().a_mask()), ay = Level::absolute(f.target().a_mask());
        std::vector<std::string> broken;
        size_t checked = 0;
        for (size_t n = 1; n <= 2; ++n)
            for (Variant v : {Variant::homology, Variant::cohomology}) {
                ++checked;
                try {
                    const GroupHom fx = induced_infty(f, ex, px, ey, py, n, v);
                    const GroupHom fa = induced_infty(f, ex, ax, ey, ay, n - 1, v);
                    const GroupHom dx = ex.connecting(px, n, v), dy = ey.connecting(py, n, v);
                    const bool ok = v == Variant::homology ? compose(fa, dx) == compose(dy, fx)
                                                           : compose(fx, dy) == compose(dx, fa);
                    if (!ok)
                        broken.push_back(case_name(v, n));
                } catch (const InconclusiveError&) {
                    broken.push_back(case_name(v, n) + " inconclusive");
                }
            }
        AuditLine l = law(pm.name, broken, checked);
        l.suite = "naturality";
        out.push_back(std::move(l));
    }
    return out;
}

std::vector<std::pair<std::string, SpacePair>> subjects(const AuditOptions& o, const Spaces& s)
{
    std::vector<std::pair<std::string, SpacePair>> out;
    if (o.space) {
        out.emplace_back("space", *o.space);
        return out;
    }
    for (Example e : all_examples())
        if (selected(o, {e}))
            out.emplace_back(std::string(example_name(e)), s[e]);
    return out;
}

std::string sequence_detail(const SequenceReport& coh, const SequenceReport& hom)
{
    auto part = [](const char* name, const SequenceReport& r) {
        size_t zero = 0, exact = 0;
        for (const auto& a : r.audits) {
            zero += a.audited && a.composite_zero;
            exact += a.audited && a.exact;
        }
        return std::string(name) + " audited " + status(r.audited(), r.nodes.size()) + ", composite zero " +
               std::to_string(zero) + ", exact " + std::to_string(exact);
    };
    return part("cohomology", coh) + "; " + part("homology", hom);
}

std::vector<AuditLine> exactness_suite(const AuditOptions& o)
{
    const Spaces s(o.depth);
    Engines engines(Coefficients::integers(), o.border);
    std::vector<AuditLine> out;
    for (const auto& [name, pair] : subjects(o, s)) {
        BorderEngine& e = engines(pair);
        std::vector<std::pair<std::string, std::vector<bool>>> masks;
        if (!pair.a_empty())
            masks.emplace_back("A", pair.a_mask());
        if (pair.space().is_compact() && pair.a_empty()) {
            std::vector<bool> edge(pair.space().vertex_count(), false);
            for (size_t v = 0; v < edge.size() && v < 2; ++v)
                edge[v] = true;
            masks.emplace_back("edge", edge);
        }
        for (int j = 0; j < o.random; ++j)
            masks.emplace_back("random" + std::to_string(j), audit_mask(pair.space(), o.seed, j));
        for (const auto& [tag, a] : masks) {
            const auto coh = pair_sequence(e, a, 0, 2, Variant::cohomology);
            const auto hom = pair_sequence(e, a, 0, 2, Variant::homology);
            const bool ok = coh.all_exact() && coh.all_composites_zero() && hom.all_composites_zero();
            out.push_back({"exactness", name + "." + tag, ok, sequence_detail(coh, hom) + " (|A| = " + std::to_string(count(a)) + ")"});
        }
    }
    return out;
}

std::vector<AuditLine> triple_suite(const AuditOptions& o)
{
    const Spaces s(o.depth);
    Engines engines(Coefficients::integers(), o.border);
    struct Triple {
        std::string name;
        SpacePair x;
        std::vector<bool> a, b;
    };
    std::vector<Triple> triples;
    if (!o.space) {
        const auto& line = s[Example::line];
        const auto left = mask_where(line, [](const std::string& l) { return num(l) <= 0; });
        const auto far = mask_where(line, [](const std::string& l) { return num(l) <= -2; });
        const auto& plane = s[Example::plane];
        const auto half = mask_where(plane, [](const std::string& l) { return coord(l, 1) <= 0; });
        const auto corner = mask_where(plane, [](const std::string& l) { return coord(l, 0) <= -1 && coord(l, 1) <= -1; });
        const auto& cyl = s[Example::cylinder];
        const auto lower = mask_where(cyl, [](const std::string& l) { return coord(l, 1) <= 0; });
        const auto lowest = mask_where(cyl, [](const std::string& l) { return coord(l, 1) <= -2; });
        const std::vector<bool> none(line.space().vertex_count(), false);
        if (selected(o, {Example::line})) {
            triples.push_back({"line.left.far_left", line, left, far});
            triples.push_back({"line.left.B=A", line, left, left});
            triples.push_back({"line.left.B=empty", line, left, none});
        }
        if (selected(o, {Example::plane}))
            triples.push_back({"plane.half.corner", plane, half, corner});
        if (selected(o, {Example::cylinder}))
            triples.push_back({"cylinder.lower.lowest", cyl, lower, lowest});
    }
    for (const auto& [name, pair] : subjects(o, s)) {
        if (pair.space().is_compact())
            continue;
        for (int j = 0; j < o.random; ++j) {
            const auto a = audit_mask(pair.space(), o.seed, 2 * j);
            const auto b = meet(audit_mask(pair.space(), o.seed, 2 * j + 1), a);
            triples.push_back({name + ".random" + std::to_string(j), pair, a, b});
        }
    }
    std::vector<AuditLine> out;
    for (const auto& t : triples) {
        BorderEngine& e = engines(t.x);
        const auto coh = triple_sequence(e, t.a, t.b, 0, 2, Variant::cohomology);
        const auto hom = triple_sequence(e, t.a, t.b, 0, 2, Variant::homology);
        const bool ok = coh.all_exact() && coh.all_composites_zero() && hom.all_composites_zero();
        out.push_back({"triple", t.name, ok, sequence_detail(coh, hom)});
    }
    return out;
}

std::vector<AuditLine> excision_suite(const AuditOptions& o)
{
    const Spaces s(o.depth);
    struct Fixture {
        Example e;
        std::string name;
        Pred in_a, cut;
    };
    const std::vector<Fixture> fixtures = {
        {Example::line, "line.left", [](const std::string& l) { return num(l) <= 0; },
         [](const std::string& l) { return num(l) <= -2; }},
        {Example::ray, "ray.tail", [](const std::string& l) { return num(l) >= 2; },
         [](const std::string& l) { return num(l) >= 3; }},
        {Example::plane, "plane.left_half", [](const std::string& l) { return coord(l, 0) <= 0; },
         [](const std::string& l) { return coord(l, 0) <= -2; }},
        {Example::cylinder, "cylinder.lower", [](const std::string& l) { return coord(l, 1) <= 0; },
         [](const std::string& l) { return coord(l, 1) <= -2; }},
        {Example::two_rays_wedge, "wedge.branch", [](const std::string& l) { return l[0] == 'a'; },
         [](const std::string& l) { return l[0] == 'a' && branch_index(l) >= 2; }},
    };
    std::vector<AuditLine> out;
    for (const auto& f : fixtures) {
        if (!selected(o, {f.e}))
            continue;
        const auto pair = s[f.e].with_a(mask_where(s[f.e], f.in_a));
        const auto ex = excise(pair, StarUnionSet::of_vertices(pair.complex(), where(pair, f.cut)));
        std::vector<std::string> broken;
        std::string groups;
        for (size_t n = 0; n <= 2; ++n)
            for (Variant v : {Variant::homology, Variant::cohomology}) {
                try {
                    const GroupHom h = induced_infty(ex.inclusion, n, Coefficients::integers(), v, o.border);
                    if (!h.is_isomorphism())
                        broken.push_back(case_name(v, n));
                    groups += (groups.empty() ? "" : " ") + case_name(v, n) + "=" + h.source().render();
                } catch (const InconclusiveError&) {
                    broken.push_back(case_name(v, n) + " inconclusive");
                }
            }
        out.push_back({"excision", f.name, broken.empty(),
                       broken.empty() ? "isomorphisms " + groups : "fails at " + broken.front()});
    }
    return out;
}

std::string bound(int b)
{
    return b < 0 ? "none" : std::to_string(b);
}

std::vector<AuditLine> dimensions_suite(const AuditOptions& o)
{
    const Spaces s(o.depth);
    Engines engines(Coefficients::integers(), o.border);
    std::vector<AuditLine> out;
    for (const auto& [name, pair] : subjects(o, s)) {
        BorderEngine& e = engines(pair);
        const Level x = Level::whole(pair.space());
        std::vector<std::vector<bool>> family;
        for (int j = 0; j < std::max(o.random, 1); ++j)
            family.push_back(audit_mask(pair.space(), o.seed, j));
        const auto sx = cohdim_small(e, x, family), lx = cohdim_large(e, x, family);
        out.push_back({"dimensions", name + ".d_le_D", sx.lower <= lx.upper,
                       "d >= " + bound(sx.lower) + ", D <= " + bound(lx.upper)});
        for (size_t i = 0; i < family.size(); ++i) {
            std::vector<std::vector<bool>> inside, matched = family;
            for (size_t k = 0; k < family.size(); ++k)
                if (k != i) {
                    inside.push_back(meet(family[k], family[i]));
                    matched.push_back(inside.back());
                }
            const Level a = Level::absolute(family[i]);
            const auto sa = cohdim_small(e, a, inside), la = cohdim_large(e, a, inside);
            const auto sm = cohdim_small(e, x, matched), lm = cohdim_large(e, x, matched);
            const bool untested = sa.untested + la.untested + sm.untested + lm.untested > 0;
            const bool ok = untested || (sa.lower <= sm.lower && la.lower <= lm.lower);
            std::ostringstream d;
            d << "d(A) >= " << bound(sa.lower) << " vs d(X) >= " << bound(sm.lower) << "; D(A) >= " << bound(la.lower)
              << " vs D(X) >= " << bound(lm.lower) << (untested ? "; some members untested" : "");
            out.push_back({"dimensions", name + ".monotone" + std::to_string(i), ok, d.str()});
        }
        const auto c = cyclicity(e, Level::of_pair(pair), Variant::cohomology);
        std::string value = c.exact ? bound(c.lower) : "[" + bound(c.lower) + "," + bound(c.upper) + "]";
        out.push_back({"dimensions", name + ".cyclicity", c.lower <= c.upper || c.exact,
                       "cohomological cyclicity " + value + ", nerve dimension " + std::to_string(c.nerve_dimension)});
    }
    return out;
}

}  // namespace

std::vector<bool> audit_mask(const FilteredSpace& space, unsigned long long seed, int index)
{
    return random_closed_mask(space, seed * 1000003ULL + static_cast<unsigned long long>(index));
}

std::vector<NamedMap> fixture_maps(int depth)
{
    static std::map<int, Spaces> cache;
    auto it = cache.find(depth);
    if (it == cache.end())
        it = cache.emplace(depth, Spaces(depth)).first;
    const Spaces& s = it->second;
    const auto &line = s[Example::line], &ray = s[Example::ray], &plane = s[Example::plane], &cyl = s[Example::cylinder],
               &wedge = s[Example::two_rays_wedge], &tri = s[Example::compact_triangle];
    std::vector<NamedMap> out;
    out.push_back({"include", by_label(ray, line, [](const std::string& l) { return l; })});
    out.push_back({"fold", by_label(line, ray, [](const std::string& l) { return std::to_string(std::abs(num(l))); })});
    out.push_back({"negate", by_label(line, line, [](const std::string& l) { return std::to_string(-num(l)); })});
    out.push_back({"swap", by_label(plane, plane, [](const std::string& l) { return xy(coord(l, 1), coord(l, 0)); })});
    out.push_back({"reflect", by_label(plane, plane, [](const std::string& l) { return xy(-coord(l, 0), -coord(l, 1)); })});
    out.push_back({"shift", by_label(cyl, cyl, [](const std::string& l) {
                       return std::to_string((coord(l, 0) + 1) % 4) + "," + std::to_string(coord(l, 1));
                   })});
    out.push_back({"flip", by_label(cyl, cyl, [](const std::string& l) {
                       return std::to_string((4 - coord(l, 0)) % 4) + "," + std::to_string(-coord(l, 1));
                   })});
    out.push_back({"squash", by_label(wedge, ray, [](const std::string& l) { return std::to_string(branch_index(l)); })});
    out.push_back({"swap_branches", by_label(wedge, wedge, [](const std::string& l) {
                       return l == "0" ? l : std::string(l[0] == 'a' ? "b" : "a") + l.substr(1);
                   })});
    out.push_back({"collapse", by_label(tri, tri, [&](const std::string&) { return tri.space().label(0); })});
    return out;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"compact",    "functoriality", "naturality", "exactness",
                                                   "triple",     "excision",      "dimensions"};
    return names;
}

std::vector<AuditLine> run_suite(std::string_view suite, const AuditOptions& opts)
{
    if (suite == "compact")
        return compact_suite(opts);
    if (suite == "functoriality")
        return functoriality_suite(opts);
    if (suite == "naturality")
        return naturality_suite(opts);
    if (suite == "exactness")
        return exactness_suite(opts);
    if (suite == "triple")
        return triple_suite(opts);
    if (suite == "excision")
        return excision_suite(opts);
    if (suite == "dimensions")
        return dimensions_suite(opts);
    throw std::invalid_argument("unknown audit suite '" + std::string(suite) + "'");
}

}  // namespace cechb::cli
