#include <numeric>
#include <random>
#include <set>

#include "cechborder/spaces.hpp"
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

// Every simplex of k lying in the set, by brute force over the definition.
std::set<Simplex> members(const SimplicialComplex& k, const StarUnionSet& u)
{
    std::set<Simplex> out;
    for (int n = 0; n <= k.dimension(); ++n)
        for (const auto& s : k.simplices(static_cast<size_t>(n)))
            for (const auto& c : u.cores())
                if (std::includes(s.begin(), s.end(), c.begin(), c.end()))
                    out.insert(s);
    return out;
}

StarUnionSet random_set(std::mt19937_64& rng, const SimplicialComplex& k, int count)
{
    std::vector<Simplex> all;
    for (int n = 0; n <= k.dimension(); ++n)
        for (const auto& s : k.simplices(static_cast<size_t>(n)))
            all.push_back(s);
    std::vector<Simplex> cores;
    for (int i = 0; i < count; ++i)
        cores.push_back(all[rng() % all.size()]);
    return StarUnionSet(k, cores);
}

ProperModelMap by_label(const SpacePair& src, const SpacePair& tgt,
                        const std::function<std::string(const std::string&)>& f)
{
    std::vector<Vertex> m;
    for (size_t v = 0; v < src.space().vertex_count(); ++v)
        m.push_back(id(tgt, f(src.space().label(static_cast<Vertex>(v)))));
    return ProperModelMap(src, tgt, m);
}

}  // namespace

TEST_CASE("natural label order")
{
    const std::vector<std::string> sorted = {"-10", "-2", "-1", "0", "1", "2", "10", "a1", "a2", "a10", "b1"};
    for (size_t i = 0; i < sorted.size(); ++i)
        for (size_t j = 0; j < sorted.size(); ++j)
            CHECK_MESSAGE(natural_less(sorted[i], sorted[j]) == (i < j), sorted[i] << " vs " << sorted[j]);
    CHECK(natural_less("0,-1", "0,0"));
    CHECK(natural_less("0,2", "1,-2"));
    CHECK(natural_less("-1,3", "0,-3"));
    CHECK_FALSE(natural_less("x", "x"));
}

TEST_CASE("filtered space construction")
{
    FilteredSpace s({"b", "a", "c"}, {1, 0, 2}, {{0, 1}, {0, 2}});
    CHECK(s.label(0) == "a");
    CHECK(s.stage(0) == 0);
    CHECK(s.stage(1) == 1);
    CHECK(s.complex().contains({0, 1}));
    CHECK(s.complex().contains({1, 2}));
    CHECK_FALSE(s.complex().contains({0, 2}));
    CHECK(s.depth() == 2);
    CHECK(*s.find("c") == 2);
    CHECK_FALSE(s.find("d").has_value());
    CHECK(s.max_spread() == 1);

    CHECK_THROWS_AS(FilteredSpace({"a", "a"}, {0, 0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(FilteredSpace({"a"}, {-1}, {}), std::invalid_argument);
    CHECK_THROWS_AS(FilteredSpace({"a b"}, {0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(FilteredSpace({"a"}, {3}, {}, 2), std::invalid_argument);
    CHECK_THROWS_AS(FilteredSpace({"a"}, {0}, {{0, 1}}), std::invalid_argument);
    CHECK(FilteredSpace({"a"}, {0}, {}, 4).depth() == 4);
}

TEST_CASE("example generators")
{
    SUBCASE("line")
    {
        auto p = generate_example(Example::line, 3);
        CHECK(p.space().vertex_count() == 7);
        CHECK(p.complex().count(1) == 6);
        CHECK(p.complex().dimension() == 1);
        for (int v = -3; v <= 3; ++v)
            CHECK(p.space().stage(id(p, std::to_string(v))) == std::abs(v));
        CHECK(p.space().depth() == 3);
        CHECK(p.a_empty());
    }
    SUBCASE("point")
    {
        for (int d : {1, 4}) {
            auto p = generate_example("point", d);
            CHECK(p.space().vertex_count() == 1);
            CHECK(p.space().stage(0) == 0);
            CHECK(p.space().is_compact());
        }
    }
    SUBCASE("plane")
    {
        for (int d : {1, 2, 3}) {
            auto p = generate_example(Example::plane, d);
            const size_t side = static_cast<size_t>(2 * d + 1), cells = static_cast<size_t>(2 * d);
            CHECK(p.space().vertex_count() == side * side);
            CHECK(p.complex().count(2) == 2 * cells * cells);
            CHECK(p.complex().count(1) == 2 * side * cells + cells * cells);
            CHECK(p.space().stage(id(p, "-1," + std::to_string(d))) == d);
            CHECK(p.space().max_spread() == 1);
        }
        CHECK(generate_example(Example::plane, 2).complex().count(2) == 32);
    }
    SUBCASE("cylinder")
    {
        auto p = generate_example(Example::cylinder, 2);
        CHECK(p.space().vertex_count() == 20);
        CHECK(p.complex().count(2) == 32);
        SimplicialPair sp(p.complex());
        CHECK(homology(sp, 1, Coefficients::integers()).render() == "Z");
        CHECK(homology(sp, 2, Coefficients::integers()).render() == "0");
        CHECK(p.space().stage(id(p, "3,-2")) == 2);
    }
    SUBCASE("ray, wedge and triangle")
    {
        auto r = generate_example(Example::ray, 4);
        CHECK(r.space().vertex_count() == 5);
        CHECK(r.space().stage(id(r, "4")) == 4);
        auto w = generate_example(Example::two_rays_wedge, 3);
        CHECK(w.space().vertex_count() == 7);
        CHECK(w.complex().count(1) == 6);
        CHECK(w.space().stage(id(w, "b3")) == 3);
        CHECK(w.complex().contains({id(w, "0"), id(w, "a1")}));
        auto t = generate_example(Example::compact_triangle, 5);
        CHECK(t.space().is_compact());
        CHECK(t.complex().count(1) == 3);
        CHECK(t.complex().count(2) == 0);
    }
    SUBCASE("deterministic and named")
    {
        for (Example e : all_examples()) {
            CHECK(generate_example(e, 3) == generate_example(e, 3));
            CHECK(parse_example(example_name(e)) == e);
        }
        CHECK_THROWS_AS(generate_example("torus", 2), std::invalid_argument);
        CHECK_THROWS_AS(generate_example(Example::line, 0), std::invalid_argument);
    }
}

TEST_CASE("proper model maps")
{
    auto line = generate_example(Example::line, 4);
    auto ray = generate_example(Example::ray, 4);

    SUBCASE("identity")
    {
        auto f = ProperModelMap::identity(line);
        CHECK(f.source_stage(2) == 2);
        CHECK(f.certificate()[0] == 0);
    }
    SUBCASE("inclusion and fold")
    {
        auto inc = by_label(ray, line, [](const std::string& s) { return s; });
        CHECK(inc.certificate() == std::vector<int>{0, 1, 2, 3, 4});
        auto fold = by_label(line, ray, [](const std::string& s) { return std::to_string(std::abs(std::stoi(s))); });
        CHECK(fold.source_stage(1) == 1);
        auto c = compose(fold, inc);
        for (size_t v = 0; v < ray.space().vertex_count(); ++v)
            CHECK(c(static_cast<Vertex>(v)) == static_cast<Vertex>(v));
    }
    SUBCASE("rejections")
    {
        CHECK_THROWS_AS(by_label(line, ray, [](const std::string&) { return std::string("0"); }), NotProperError);
        CHECK_THROWS_AS(by_label(ray, line, [](const std::string& s) { return std::to_string(2 * std::stoi(s) % 5); }),
                        std::invalid_argument);
        auto line_a = line.with_a(mask_where(line, [](const std::string& s) { return std::stoi(s) >= 2; }));
        CHECK_THROWS_AS(by_label(line_a, ray.with_a(mask_where(ray, [](const std::string& s) { return s == "4"; })),
                                 [](const std::string& s) { return std::to_string(std::abs(std::stoi(s))); }),
                        std::invalid_argument);
        auto pt = generate_example(Example::point, 1);
        CHECK_THROWS_AS(by_label(pt, line, [](const std::string& s) { return s; }), std::invalid_argument);
        CHECK_THROWS_AS(by_label(ray, pt, [](const std::string&) { return std::string("0"); }), NotProperError);
    }
    SUBCASE("compressing maps pull the frontier inward")
    {
        CHECK_THROWS_AS(by_label(ray, line, [](const std::string& s) { return std::to_string(std::stoi(s) / 2); }),
                        NotProperError);
    }
}

TEST_CASE("star-union sets")
{
    auto line = generate_example(Example::line, 3);
    const auto& k = line.complex();
    const Vertex m1 = id(line, "-1"), z = id(line, "0"), p1 = id(line, "1"), p2 = id(line, "2"), p3 = id(line, "3");

    SUBCASE("normalization")
    {
        StarUnionSet u(k, {{p1, p2}, {p1}, {z, m1}});
        CHECK(u.cores() == std::vector<Simplex>{{m1, z}, {p1}});
        CHECK(u.contains({p1}));
        CHECK(u.contains({p1, p2}));
        CHECK_FALSE(u.contains({p2}));
        CHECK(u.core_vertices() == std::vector<Vertex>{m1, z, p1});
        CHECK_THROWS_AS(StarUnionSet(k, {{99}}), std::invalid_argument);
        CHECK(StarUnionSet(k, {{m1, p1}}).empty());
    }
    SUBCASE("intersections and differences")
    {
        auto s1 = StarUnionSet::of_vertices(k, {p1}), s2 = StarUnionSet::of_vertices(k, {p2});
        CHECK(intersect(k, s1, s2).cores() == std::vector<Simplex>{{p1, p2}});
        CHECK(intersect(k, s1, StarUnionSet::of_vertices(k, {p3})).empty());
        CHECK(intersect(k, s1, s1) == s1);
        std::vector<bool> a(line.space().vertex_count());
        a[static_cast<size_t>(z)] = true;
        CHECK(remove_closed(k, StarUnionSet::of_vertices(k, {z}), a).cores() == std::vector<Simplex>{{m1, z}, {z, p1}});
        CHECK(intersect(k, s1, s2).subset_of(s1));
        CHECK_FALSE(s1.subset_of(s2));
        CHECK(s1.meets(mask_where(line, [](const std::string& s) { return s == "1"; })));
        CHECK_FALSE(intersect(k, s1, s2).meets(mask_where(line, [](const std::string& s) { return s == "1"; })));
    }
    SUBCASE("set semantics against brute force")
    {
        auto plane = generate_example(Example::plane, 2);
        const auto& pk = plane.complex();
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 40; ++trial) {
            auto a = random_set(rng, pk, 1 + static_cast<int>(rng() % 4));
            auto b = random_set(rng, pk, 1 + static_cast<int>(rng() % 4));
            const auto ma = members(pk, a), mb = members(pk, b);
            std::set<Simplex> both;
            std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(), std::inserter(both, both.end()));
            CHECK(members(pk, intersect(pk, a, b)) == both);
            CHECK(a.subset_of(b) == std::includes(mb.begin(), mb.end(), ma.begin(), ma.end()));

            std::vector<bool> mask(plane.space().vertex_count());
            for (size_t v = 0; v < mask.size(); ++v)
                mask[v] = rng() % 2 == 0;
            std::set<Simplex> off;
            bool meets = false;
            for (const auto& s : ma) {
                const bool in = std::all_of(s.begin(), s.end(), [&](Vertex v) { return mask[static_cast<size_t>(v)]; });
                meets = meets || in;
                if (!in)
                    off.insert(s);
            }
            CHECK(members(pk, remove_closed(pk, a, mask)) == off);
            CHECK(a.meets(mask) == meets);
        }
    }
    SUBCASE("preimages")
    {
        auto ray = generate_example(Example::ray, 3);
        auto fold = by_label(line, ray, [](const std::string& s) { return std::to_string(std::abs(std::stoi(s))); });
        auto u = StarUnionSet::of_vertices(ray.complex(), {id(ray, "2")});
        auto pre = preimage(fold, u);
        CHECK(pre == StarUnionSet::of_vertices(k, {id(line, "-2"), p2}));
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            auto s = random_set(rng, ray.complex(), 2);
            const auto target = members(ray.complex(), s);
            std::set<Simplex> expect;
            for (int n = 0; n <= 1; ++n)
                for (const auto& x : k.simplices(static_cast<size_t>(n))) {
                    Simplex img;
                    for (Vertex v : x)
                        img.push_back(fold(v));
                    std::sort(img.begin(), img.end());
                    img.erase(std::unique(img.begin(), img.end()), img.end());
                    if (target.contains(img))
                        expect.insert(x);
                }
            CHECK(members(k, preimage(fold, s)) == expect);
        }
        CHECK(preimage(ProperModelMap::identity(line), pre) == pre);
    }
}

TEST_CASE("closed subpairs")
{
    auto line = generate_example(Example::line, 3);
    SUBCASE("everything")
    {
        std::vector<Vertex> all(line.space().vertex_count());
        std::iota(all.begin(), all.end(), 0);
        auto sub = closed_subpair(line, all);
        CHECK(sub.pair == line);
        CHECK(sub.inclusion.vertex_map() == all);
    }
    SUBCASE("left half is a ray")
    {
        std::vector<Vertex> left;
        for (int v = -3; v <= 0; ++v)
            left.push_back(id(line, std::to_string(v)));
        auto with_a = line.with_a(mask_where(line, [](const std::string& s) { return std::stoi(s) <= -2; }));
        auto sub = closed_subpair(with_a, left);
        CHECK(sub.pair.space().vertex_count() == 4);
        CHECK(sub.pair.complex().count(1) == 3);
        CHECK(sub.pair.space().depth() == 3);
        CHECK(sub.pair.space().stage(id(sub.pair, "-3")) == 3);
        CHECK(sub.pair.a_vertices().size() == 2);
        CHECK(line.space().label(sub.inclusion(id(sub.pair, "-1"))) == "-1");
    }
    SUBCASE("one circle of the cylinder")
    {
        auto cyl = generate_example(Example::cylinder, 2);
        std::vector<Vertex> ring;
        for (int j = 0; j < 4; ++j)
            ring.push_back(id(cyl, std::to_string(j) + ",0"));
        auto sub = closed_subpair(cyl, ring);
        CHECK(sub.pair.complex().count(1) == 4);
        CHECK(sub.pair.space().max_stage() == 0);
        CHECK(homology(SimplicialPair(sub.pair.complex()), 1, Coefficients::integers()).render() == "Z");
    }
}

TEST_CASE("excision")
{
    auto base = generate_example(Example::line, 4);
    auto line = base.with_a(mask_where(base, [](const std::string& s) { return std::stoi(s) <= 0; }));
    std::vector<Vertex> far;
    for (int v = -4; v <= -2; ++v)
        far.push_back(id(line, std::to_string(v)));
    auto ex = excise(line, StarUnionSet::of_vertices(line.complex(), far));
    std::vector<std::string> labels;
    for (size_t v = 0; v < ex.pair.space().vertex_count(); ++v)
        labels.push_back(ex.pair.space().label(static_cast<Vertex>(v)));
    CHECK(labels == std::vector<std::string>{"-1", "0", "1", "2", "3", "4"});
    CHECK(ex.pair.a_vertices().size() == 2);

    auto none = excise(line, StarUnionSet());
    CHECK(none.pair == line);

    try {
        excise(line, StarUnionSet::of_vertices(line.complex(), {id(line, "0")}));
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("'0'") != std::string::npos);
    }
    CHECK_THROWS_AS(excise(line, StarUnionSet::of_vertices(line.complex(), {id(line, "2")})), std::invalid_argument);
}

TEST_CASE("random closed masks")
{
    for (Example e : {Example::line, Example::plane, Example::cylinder, Example::two_rays_wedge}) {
        auto p = generate_example(e, 3);
        for (unsigned long long seed = 0; seed < 10; ++seed) {
            auto m = random_closed_mask(p.space(), seed);
            CHECK(m == random_closed_mask(p.space(), seed));
            for (const auto& edge : p.complex().simplices(1)) {
                const Vertex lo = p.space().stage(edge[0]) < p.space().stage(edge[1]) ? edge[0] : edge[1];
                const Vertex hi = lo == edge[0] ? edge[1] : edge[0];
                if (p.space().stage(lo) != p.space().stage(hi) && m[static_cast<size_t>(lo)])
                    CHECK(m[static_cast<size_t>(hi)]);
            }
        }
    }
}
