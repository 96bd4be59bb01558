#include <functional>

#include "cechborder/border.hpp"
#include "doctest.h"

using namespace cechb;

namespace {

Vertex id(const SpacePair& p, const std::string& label)
{
    auto v = p.space().find(label);
    REQUIRE_MESSAGE(v.has_value(), label);
    return *v;
}

std::vector<bool> mask_where(const SpacePair& p, const std::function<bool(const std::string&)>& pred)
{
    std::vector<bool> m(p.space().vertex_count());
    for (size_t v = 0; v < m.size(); ++v)
        m[v] = pred(p.space().label(static_cast<Vertex>(v)));
    return m;
}

std::vector<Vertex> where(const SpacePair& p, const std::function<bool(const std::string&)>& pred)
{
    std::vector<Vertex> out;
    for (size_t v = 0; v < p.space().vertex_count(); ++v)
        if (pred(p.space().label(static_cast<Vertex>(v))))
            out.push_back(static_cast<Vertex>(v));
    return out;
}

ProperModelMap by_label(const SpacePair& src, const SpacePair& tgt,
                        const std::function<std::string(const std::string&)>& f)
{
    std::vector<Vertex> m;
    for (size_t v = 0; v < src.space().vertex_count(); ++v)
        m.push_back(id(tgt, f(src.space().label(static_cast<Vertex>(v)))));
    return ProperModelMap(src, tgt, m);
}

int coord(const std::string& s, int which)
{
    const auto comma = s.find(',');
    return std::stoi(which == 0 ? s.substr(0, comma) : s.substr(comma + 1));
}

std::string H(const SpacePair& p, size_t n, Variant v, const Coefficients& g = Coefficients::integers())
{
    const LimitResult r = v == Variant::homology ? border_homology(p, n, g) : border_cohomology(p, n, g);
    REQUIRE(r.stabilized());
    return g.render_value(r.group);
}

// Closed samples for property checks. Plane samples are unions of sectors,
// whose relative groups settle within a few stages; random masks on the
// plane keep changing shape at every stage.
std::vector<bool> sample_mask(const SpacePair& p, unsigned long long seed)
{
    if (p.space().vertex_count() == 0 || p.space().find("0,0") == std::nullopt)
        return random_closed_mask(p.space(), seed);
    const std::vector<std::function<bool(int, int)>> sectors = {
        [](int, int y) { return y <= 0; },
        [](int x, int y) { return x >= 1 && y >= 1; },
        [](int x, int y) { return (x >= 1 && y >= 1) || (x <= -1 && y <= -1); },
        [](int x, int) { return x <= -2 || x >= 2; },
        [](int x, int y) { return y >= 1 || x <= -1; },
        [](int x, int) { return x >= 0; },
    };
    const auto& f = sectors[seed % sectors.size()];
    return mask_where(p, [&](const std::string& s) { return f(coord(s, 0), coord(s, 1)); });
}

}  // namespace

TEST_CASE("border groups of the examples")
{
    const auto hom = Variant::homology, coh = Variant::cohomology;
    struct Row {
        Example e;
        std::vector<std::string> groups;  // degrees 0..2
    };
    const std::vector<Row> rows = {
        {Example::point, {"Z", "0", "0"}},
        {Example::compact_triangle, {"Z", "0", "0"}},
        {Example::line, {"Z^2", "0", "0"}},
        {Example::ray, {"Z", "0", "0"}},
        {Example::plane, {"Z", "Z", "0"}},
        {Example::cylinder, {"Z^2", "Z^2", "0"}},
        {Example::two_rays_wedge, {"Z^2", "0", "0"}},
    };
    for (const auto& row : rows) {
        const auto p = generate_example(row.e, 5);
        for (size_t n = 0; n < 3; ++n) {
            CAPTURE(example_name(row.e));
            CAPTURE(n);
            CHECK(H(p, n, hom) == row.groups[n]);
            CHECK(H(p, n, coh) == row.groups[n]);
        }
    }

    const auto plane = generate_example(Example::plane, 5);
    CHECK(H(plane, 1, hom, Coefficients::mod(Integer(2))) == "Z/2");
    CHECK(H(plane, 1, coh, Coefficients::rationals()) == "Q");
    CHECK(H(generate_example(Example::cylinder, 5), 0, coh, Coefficients::parse("Z+Z/3")) == "Z^2 + Z/3 + Z/3");

    // The limit is reached within the first stages and does not depend on a
    // longer truncation.
    for (Example e : {Example::line, Example::plane, Example::cylinder}) {
        const auto r = border_cohomology(generate_example(e, 5), 1, Coefficients::integers());
        REQUIRE(r.stabilized());
        CHECK(r.stable_stage <= 1);
        CHECK(border_cohomology(generate_example(e, 7), 1, Coefficients::integers()).group == r.group);
    }

    BorderOptions short_horizon;
    short_horizon.horizon = 2;
    CHECK_FALSE(border_homology(plane, 1, Coefficients::integers(), short_horizon).stabilized());
    short_horizon.horizon = 5;
    CHECK_THROWS_AS(border_homology(plane, 1, Coefficients::integers(), short_horizon), std::invalid_argument);
}

TEST_CASE("relative groups")
{
    auto base = generate_example(Example::line, 5);
    auto left = base.with_a(mask_where(base, [](const std::string& s) { return std::stoi(s) <= 0; }));
    CHECK(H(left, 0, Variant::cohomology) == "Z");
    CHECK(H(left, 1, Variant::cohomology) == "0");

    auto plane = generate_example(Example::plane, 5);
    auto half = plane.with_a(mask_where(plane, [](const std::string& s) { return coord(s, 1) <= 0; }));
    // Circle relative to an arc, then relative to two disjoint arcs.
    CHECK(H(half, 0, Variant::cohomology) == "0");
    CHECK(H(half, 1, Variant::cohomology) == "Z");
    auto quadrants = plane.with_a(mask_where(plane, [](const std::string& s) {
        return (coord(s, 0) >= 1 && coord(s, 1) >= 1) || (coord(s, 0) <= -1 && coord(s, 1) <= -1);
    }));
    CHECK(H(quadrants, 0, Variant::cohomology) == "0");
    CHECK(H(quadrants, 1, Variant::cohomology) == "Z^2");
}

TEST_CASE("induced maps")
{
    const auto hom = Variant::homology, coh = Variant::cohomology;
    const auto z = Coefficients::integers();
    for (Example e : all_examples()) {
        const auto p = generate_example(e, 5);
        const auto id_map = ProperModelMap::identity(p);
        for (size_t n = 0; n < 2; ++n)
            for (Variant v : {hom, coh}) {
                const GroupHom h = induced_infty(id_map, n, z, v);
                CHECK(h == GroupHom::identity(h.source()));
            }
    }

    const auto ray = generate_example(Example::ray, 5);
    const auto line = generate_example(Example::line, 5);
    const auto wedge = generate_example(Example::two_rays_wedge, 5);
    const auto incl = by_label(ray, line, [](const std::string& s) { return s; });
    const auto fold = by_label(line, ray, [](const std::string& s) { return std::to_string(std::abs(std::stoi(s))); });
    const auto squash = by_label(wedge, ray, [](const std::string& s) { return s == "0" ? s : s.substr(1); });

    const GroupHom i0 = induced_infty(incl, 0, z, hom);
    CHECK(i0.source().render() == "Z");
    CHECK(i0.target().render() == "Z^2");
    CHECK(i0.is_injective());
    CHECK_FALSE(i0.is_surjective());
    const GroupHom f0 = induced_infty(fold, 0, z, hom);
    CHECK(f0.matrix() == IntMatrix{{1, 1}});
    CHECK(compose(f0, i0) == GroupHom::identity(i0.source()));
    CHECK(induced_infty(squash, 0, z, hom).matrix() == IntMatrix{{1, 1}});
    CHECK(induced_infty(squash, 0, z, coh).matrix() == IntMatrix{{1}, {1}});

    // Cohomology is contravariant.
    const GroupHom c0 = induced_infty(incl, 0, z, coh);
    CHECK(c0.source().render() == "Z^2");
    CHECK(compose(c0, induced_infty(fold, 0, z, coh)) == GroupHom::identity(c0.target()));

    SUBCASE("functoriality on the plane")
    {
        auto plane = generate_example(Example::plane, 5);
        auto swap = by_label(plane, plane, [](const std::string& s) {
            return std::to_string(coord(s, 1)) + "," + std::to_string(coord(s, 0));
        });
        auto reflect = by_label(plane, plane, [](const std::string& s) {
            return std::to_string(-coord(s, 0)) + "," + std::to_string(-coord(s, 1));
        });
        BorderEngine e(plane.space_ptr(), z);
        const Level all = Level::of_pair(plane);
        for (Variant v : {hom, coh}) {
            const GroupHom s = induced_infty(swap, e, all, e, all, 1, v);
            const GroupHom r = induced_infty(reflect, e, all, e, all, 1, v);
            // A reflection reverses the circle at infinity; the point reflection keeps it.
            CHECK(s.matrix() == IntMatrix{{-1}});
            CHECK(r.matrix() == IntMatrix{{1}});
            const GroupHom sr = induced_infty(compose(swap, reflect), e, all, e, all, 1, v);
            CHECK(sr == (v == hom ? compose(s, r) : compose(r, s)));
            CHECK(induced_infty(compose(swap, swap), e, all, e, all, 1, v) == compose(s, s));
        }
    }

    SUBCASE("inconclusive limits do not give maps")
    {
        BorderOptions o;
        o.horizon = 2;
        CHECK_THROWS_AS(induced_infty(ProperModelMap::identity(line), 0, z, hom, o), InconclusiveError);
        CHECK_THROWS_AS(induced_infty(ProperModelMap::identity(line), 0, Coefficients::rationals(), hom),
                        std::invalid_argument);
    }
}

TEST_CASE("connecting maps and naturality")
{
    const auto z = Coefficients::integers();
    auto plane = generate_example(Example::plane, 5);
    auto quadrants = plane.with_a(mask_where(plane, [](const std::string& s) {
        return (coord(s, 0) >= 1 && coord(s, 1) >= 1) || (coord(s, 0) <= -1 && coord(s, 1) <= -1);
    }));
    const ConnectingMap d = coboundary_infty(quadrants, 1, z);
    CHECK(d.source.group.render() == "Z^2");
    CHECK(d.target.group.render() == "Z^2");
    CHECK(d.hom.matrix().rank() == 1);
    const ConnectingMap b = boundary_infty(quadrants, 1, z);
    CHECK(b.source.group.render() == "Z^2");
    CHECK(b.target.group.render() == "Z^2");
    CHECK(b.hom.matrix().rank() == 1);

    // The swap preserves both quadrants; the point reflection exchanges them.
    auto reflect = by_label(quadrants, quadrants, [](const std::string& s) {
        return std::to_string(-coord(s, 0)) + "," + std::to_string(-coord(s, 1));
    });
    BorderEngine e(plane.space_ptr(), z);
    const Level pair = Level::of_pair(quadrants), a = Level::absolute(quadrants.a_mask());
    for (Variant v : {Variant::homology, Variant::cohomology}) {
        const GroupHom fx = induced_infty(reflect, e, pair, e, pair, 1, v);
        const GroupHom fa = induced_infty(reflect, e, a, e, a, 0, v);
        const GroupHom dd = e.connecting(pair, 1, v);
        if (v == Variant::homology)
            CHECK(compose(fa, dd) == compose(dd, fx));
        else
            CHECK(compose(fx, dd) == compose(dd, fa));
        CHECK(fa.matrix() == IntMatrix{{0, 1}, {1, 0}});
    }
}

TEST_CASE("exact sequences")
{
    const auto z = Coefficients::integers();
    for (Example ex : all_examples()) {
        const auto p = generate_example(ex, 5);
        BorderEngine e(p.space_ptr(), z);
        for (unsigned long long seed = 0; seed < 4; ++seed) {
            CAPTURE(example_name(ex));
            CAPTURE(seed);
            const auto a = sample_mask(p, seed);
            const auto coh = pair_sequence(e, a, 0, 2, Variant::cohomology);
            CHECK(coh.nodes.size() == 11);
            CHECK(coh.audited() == 9);
            CHECK(coh.all_composites_zero());
            CHECK(coh.all_exact());
            const auto hom = pair_sequence(e, a, 0, 2, Variant::homology);
            CHECK(hom.all_composites_zero());
            CHECK(hom.all_exact());

            // B inside A: the upward closure of a second sample, intersected.
            auto b = sample_mask(p, seed + 3);
            for (size_t v = 0; v < b.size(); ++v)
                b[v] = b[v] && a[v];
            const auto tri = triple_sequence(e, a, b, 0, 1, Variant::cohomology);
            CHECK(tri.all_composites_zero());
            CHECK(tri.all_exact());
            CHECK(triple_sequence(e, a, b, 0, 1, Variant::homology).all_composites_zero());
        }
    }

    auto line = generate_example(Example::line, 5);
    auto left = line.with_a(mask_where(line, [](const std::string& s) { return std::stoi(s) <= 0; }));
    const auto r = pair_sequence(left, z, 1, 1, Variant::cohomology);
    std::vector<std::string> labels;
    for (const auto& n : r.nodes)
        labels.push_back(n.label);
    CHECK(labels == std::vector<std::string>{"Hc_inf_0(A)", "Hc_inf_1(X,A)", "Hc_inf_1(X)", "Hc_inf_1(A)",
                                             "Hc_inf_2(X,A)"});

    BorderOptions o;
    o.horizon = 2;
    BorderEngine shortened(line.space_ptr(), z, o);
    const auto un = pair_sequence(shortened, left.a_mask(), 0, 1, Variant::cohomology);
    CHECK(un.audited() == 0);
}

TEST_CASE("excision")
{
    const auto z = Coefficients::integers();
    struct Fixture {
        SpacePair pair;
        std::vector<Vertex> cut;
    };
    std::vector<Fixture> fixtures;
    {
        auto p = generate_example(Example::line, 5);
        p = p.with_a(mask_where(p, [](const std::string& s) { return std::stoi(s) <= 0; }));
        fixtures.push_back({p, where(p, [](const std::string& s) { return std::stoi(s) <= -2; })});
    }
    {
        auto p = generate_example(Example::ray, 5);
        p = p.with_a(mask_where(p, [](const std::string& s) { return std::stoi(s) >= 2; }));
        fixtures.push_back({p, where(p, [](const std::string& s) { return std::stoi(s) >= 3; })});
    }
    {
        auto p = generate_example(Example::plane, 5);
        p = p.with_a(mask_where(p, [](const std::string& s) { return coord(s, 0) <= 0; }));
        fixtures.push_back({p, where(p, [](const std::string& s) { return coord(s, 0) <= -2; })});
    }
    {
        auto p = generate_example(Example::cylinder, 5);
        p = p.with_a(mask_where(p, [](const std::string& s) { return coord(s, 1) <= 0; }));
        fixtures.push_back({p, where(p, [](const std::string& s) { return coord(s, 1) <= -2; })});
    }
    for (const auto& f : fixtures) {
        const auto ex = excise(f.pair, StarUnionSet::of_vertices(f.pair.complex(), f.cut));
        for (size_t n = 0; n < 3; ++n) {
            CAPTURE(n);
            CHECK(induced_infty(ex.inclusion, n, z, Variant::cohomology).is_isomorphism());
            CHECK(induced_infty(ex.inclusion, n, z, Variant::homology).is_isomorphism());
        }
    }
}

TEST_CASE("cyclicity and dimensions")
{
    const auto z = Coefficients::integers();
    struct Row {
        Example e;
        int cyclicity;
    };
    for (const Row& row : std::vector<Row>{{Example::point, 0},
                                           {Example::compact_triangle, 0},
                                           {Example::line, 0},
                                           {Example::plane, 1},
                                           {Example::cylinder, 1}}) {
        const auto p = generate_example(row.e, 5);
        const auto c = cyclicity(p, z, Variant::cohomology);
        CAPTURE(example_name(row.e));
        CHECK(c.exact);
        CHECK(c.lower == row.cyclicity);
        CHECK(c.upper == row.cyclicity);
    }
    auto line = generate_example(Example::line, 5);
    auto everything = line.with_a(std::vector<bool>(line.space().vertex_count(), true));
    CHECK(cyclicity(everything, z, Variant::cohomology).lower == -1);

    for (Example ex : {Example::point, Example::compact_triangle}) {
        const auto p = generate_example(ex, 0);
        BorderEngine e(p.space_ptr(), z);
        std::vector<std::vector<bool>> family{std::vector<bool>(p.space().vertex_count(), false)};
        family.front().front() = true;
        const Level x = Level::whole(p.space());
        const auto s = cohdim_small(e, x, family), l = cohdim_large(e, x, family);
        CHECK(s.lower == 0);
        CHECK(s.upper == 0);
        CHECK(l.lower == 0);
        CHECK(l.upper == 0);
    }

    SUBCASE("monotone under closed subsets")
    {
        for (Example ex : {Example::line, Example::plane, Example::cylinder, Example::two_rays_wedge}) {
            const auto p = generate_example(ex, 5);
            BorderEngine e(p.space_ptr(), z);
            const Level x = Level::whole(p.space());
            for (unsigned long long seed = 0; seed < 3; ++seed) {
                CAPTURE(example_name(ex));
                CAPTURE(seed);
                const auto a = sample_mask(p, seed);
                std::vector<std::vector<bool>> family{a}, inside;
                for (unsigned long long k = 1; k <= 3; ++k) {
                    auto b = sample_mask(p, seed * 10 + k);
                    family.push_back(b);
                    for (size_t v = 0; v < b.size(); ++v)
                        b[v] = b[v] && a[v];
                    family.push_back(b);
                    inside.push_back(b);
                }
                const Level la = Level::absolute(a);
                const auto sx = cohdim_small(e, x, family), sa = cohdim_small(e, la, inside);
                const auto bx = cohdim_large(e, x, family), ba = cohdim_large(e, la, inside);
                CHECK(sx.untested == 0);
                CHECK(sa.untested == 0);
                CHECK(sa.lower <= sx.lower);
                CHECK(ba.lower <= bx.lower);
                CHECK(sx.lower <= bx.upper);
                CHECK(sx.lower <= sx.upper);
            }
        }
    }

    SUBCASE("plane fixtures")
    {
        auto plane = generate_example(Example::plane, 5);
        BorderEngine e(plane.space_ptr(), z);
        auto quadrants = mask_where(plane, [](const std::string& s) {
            return (coord(s, 0) >= 1 && coord(s, 1) >= 1) || (coord(s, 0) <= -1 && coord(s, 1) <= -1);
        });
        const Level x = Level::whole(plane.space());
        // Two far quadrants have two border components while the plane has one.
        const auto s = cohdim_small(e, x, {quadrants});
        CHECK(s.lower == 1);
        CHECK(s.witness_degree == 0);
        CHECK(cohdim_large(e, x, {quadrants}).lower == 1);
    }
}
