#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "audit.hpp"
#include "cechborder/border.hpp"
#include "cechborder/space_io.hpp"
#include "cli.hpp"

using namespace cechb;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr double compact_seconds = 1.0;
constexpr double ends_seconds = 10.0;
constexpr double kernel_seconds = 30.0;
constexpr int end_depth = 5;
constexpr int end_window = 3;
constexpr int max_stable_stage = 5;
constexpr int random_pairs = 10;
constexpr unsigned long long pair_seed = 20240601;
constexpr int random_complexes = 25;
constexpr int max_complex_vertices = 12;
constexpr int random_matrices = 100;
constexpr int max_matrix_size = 8;
constexpr int max_entry = 9;
constexpr size_t min_maps = 5;
constexpr size_t min_triples = 3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed(double s)
{
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << s << " s";
    return os.str();
}

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string first_failure;

    void fail(const std::string& why)
    {
        if (pass)
            first_failure = why;
        pass = false;
    }
};

int failures = 0;

template <class F>
void report(int n, const char* title, F criterion)
{
    Outcome o;
    try {
        o = criterion();
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << n << "  " << title << "  (" << o.detail
              << (o.pass ? "" : "; first failure: " + o.first_failure) << ")" << std::endl;
    failures += !o.pass;
}

SpacePair fixture(Example e)
{
    const bool compact = e == Example::point || e == Example::compact_triangle;
    return generate_example(e, compact ? 0 : end_depth);
}

std::string render(const LimitResult& r, const Coefficients& g)
{
    return r.stabilized() ? g.render_value(r.group) : "inconclusive";
}

Outcome compact_degeneration()
{
    const auto t0 = Clock::now();
    Outcome o;
    const std::vector<std::string> coeffs = {"Z", "Z/2", "Z/3", "Z/2+Z", "Q"};
    size_t checked = 0;
    for (Example e : {Example::point, Example::compact_triangle}) {
        const SpacePair p = fixture(e);
        for (const auto& text : coeffs) {
            const Coefficients g = Coefficients::parse(text);
            const FgAbGroup expected0 = g.group;
            for (size_t n = 0; n <= 3; ++n)
                for (Variant v : {Variant::homology, Variant::cohomology}) {
                    const LimitResult r =
                        v == Variant::homology ? border_homology(p, n, g) : border_cohomology(p, n, g);
                    const bool ok = r.stabilized() && r.rational == g.rational &&
                                    r.group == (n == 0 ? expected0 : FgAbGroup());
                    ++checked;
                    if (!ok)
                        o.fail(std::string(example_name(e)) + " " + text + " degree " + std::to_string(n) + " gave " +
                               render(r, g));
                }
        }
    }
    const double s = seconds_since(t0);
    if (s >= compact_seconds)
        o.fail("runtime " + fixed(s));
    o.detail = std::to_string(checked) + " groups, " + fixed(s) + " < " + fixed(compact_seconds);
    return o;
}

struct EndRow {
    Example space;
    Variant variant;
    size_t degree;
    FgAbGroup group;
};

// Oracle: each stage nerve of these models is the full subcomplex on the
// vertices beyond a ball, whose homotopy type is read off by hand (two rays,
// one ray, a circle, two circles), so every stage carries the same group.
Outcome end_fixtures()
{
    const auto t0 = Clock::now();
    Outcome o;
    const auto Z = [](size_t r) { return FgAbGroup::free(r); };
    const std::vector<EndRow> table = {
        {Example::line, Variant::homology, 0, Z(2)},       {Example::line, Variant::homology, 1, Z(0)},
        {Example::line, Variant::homology, 2, Z(0)},       {Example::ray, Variant::homology, 0, Z(1)},
        {Example::ray, Variant::homology, 1, Z(0)},        {Example::plane, Variant::cohomology, 1, Z(1)},
        {Example::plane, Variant::homology, 0, Z(1)},      {Example::plane, Variant::homology, 1, Z(1)},
        {Example::plane, Variant::cohomology, 0, Z(1)},    {Example::cylinder, Variant::homology, 0, Z(2)},
        {Example::cylinder, Variant::homology, 1, Z(2)},   {Example::cylinder, Variant::cohomology, 0, Z(2)},
        {Example::cylinder, Variant::cohomology, 1, Z(2)}, {Example::cylinder, Variant::homology, 2, Z(0)},
    };
    const Coefficients g = Coefficients::integers();
    int worst_stage = 0;
    for (const auto& row : table) {
        const SpacePair p = fixture(row.space);
        const std::string where = std::string(example_name(row.space)) + " " + std::string(to_string(row.variant)) +
                                  " " + std::to_string(row.degree);
        BorderOptions opts;
        opts.window = end_window;
        const LimitResult r = row.variant == Variant::homology ? border_homology(p, row.degree, g, opts)
                                                               : border_cohomology(p, row.degree, g, opts);
        if (!r.stabilized() || r.group != row.group || r.window != end_window) {
            o.fail(where + " gave " + render(r, g));
            continue;
        }
        worst_stage = std::max(worst_stage, r.stable_stage);
        if (r.stable_stage > max_stable_stage)
            o.fail(where + " stabilized late at stage " + std::to_string(r.stable_stage));
        // stagewise oracle, straight from the filtered complex
        const FilteredSpace& x = p.space();
        for (int i = 0; i < x.depth(); ++i) {
            std::vector<Vertex> beyond;
            for (Vertex v : x.complex().vertices())
                if (x.stage(v) > i)
                    beyond.push_back(v);
            const SimplicialPair stage(x.complex().full_subcomplex(beyond));
            const FgAbGroup h = row.variant == Variant::homology ? homology(stage, row.degree, g)
                                                                 : cohomology(stage, row.degree, g);
            if (h != row.group)
                o.fail(where + " stage " + std::to_string(i) + " complex gave " + h.render());
        }
    }
    const double s = seconds_since(t0);
    if (s >= ends_seconds)
        o.fail("runtime " + fixed(s));
    o.detail = std::to_string(table.size()) + " table rows, latest stable stage " + std::to_string(worst_stage) +
               " <= " + std::to_string(max_stable_stage) + ", window " + std::to_string(end_window) + ", " + fixed(s) +
               " < " + fixed(ends_seconds);
    return o;
}

Outcome pair_exactness()
{
    Outcome o;
    size_t sequences = 0, nodes = 0, audited = 0;
    for (Example e : all_examples()) {
        const SpacePair p = fixture(e);
        BorderEngine engine(p.space_ptr(), Coefficients::integers());
        size_t fixture_audited = 0;
        for (int j = 0; j < random_pairs; ++j) {
            const auto mask = cli::audit_mask(p.space(), pair_seed, j);
            for (Variant v : {Variant::cohomology, Variant::homology}) {
                const SequenceReport r = pair_sequence(engine, mask, 0, 2, v);
                ++sequences;
                nodes += r.nodes.size();
                audited += r.audited();
                fixture_audited += r.audited();
                const bool ok = r.all_composites_zero() && (v == Variant::homology || r.all_exact());
                if (!ok)
                    o.fail(std::string(example_name(e)) + " random pair " + std::to_string(j) + " " +
                           std::string(to_string(v)));
            }
        }
        if (fixture_audited == 0)
            o.fail(std::string(example_name(e)) + " has no audited node");
    }
    o.detail = std::to_string(sequences) + " sequences, " + std::to_string(audited) + " of " + std::to_string(nodes) +
               " nodes audited, degrees 0..2";
    return o;
}

Outcome suites(const std::vector<std::string>& names, int random = 3)
{
    Outcome o;
    cli::AuditOptions opts;
    opts.seed = pair_seed;
    opts.random = random;
    size_t lines = 0;
    for (const auto& name : names)
        for (const auto& line : cli::run_suite(name, opts)) {
            ++lines;
            if (!line.pass)
                o.fail(line.suite + " " + line.subject + ": " + line.detail);
        }
    o.detail = std::to_string(lines) + " audits";
    return o;
}

Outcome excision()
{
    Outcome o = suites({"excision"});
    o.detail += ", degrees 0..2, both variants";
    return o;
}

Outcome functoriality_naturality()
{
    Outcome o = suites({"functoriality", "naturality"});
    const size_t maps = cli::fixture_maps(end_depth).size();
    if (maps < min_maps)
        o.fail("only " + std::to_string(maps) + " fixture maps");
    o.detail += " over " + std::to_string(maps) + " fixture maps plus pair maps";
    return o;
}

Outcome triples()
{
    Outcome o;
    cli::AuditOptions opts;
    opts.seed = pair_seed;
    const auto lines = cli::run_suite("triple", opts);
    bool equal = false, empty = false;
    for (const auto& line : lines) {
        if (!line.pass)
            o.fail(line.subject + ": " + line.detail);
        equal = equal || line.subject.ends_with("B=A");
        empty = empty || line.subject.ends_with("B=empty");
    }
    if (lines.size() < min_triples)
        o.fail("only " + std::to_string(lines.size()) + " triples");
    if (!equal || !empty)
        o.fail("degenerate triples missing");
    o.detail = std::to_string(lines.size()) + " triples including B = A and B = empty";
    return o;
}

Outcome dimensions()
{
    Outcome o = suites({"dimensions"}, 5);
    const SpacePair cyl = fixture(Example::cylinder);
    const CyclicityReport c = cyclicity(cyl, Coefficients::integers(), Variant::cohomology);
    if (!c.exact || c.lower != 1)
        o.fail("cylinder cyclicity " + std::to_string(c.lower) + ".." + std::to_string(c.upper));
    for (Example e : {Example::point, Example::compact_triangle}) {
        const SpacePair p = fixture(e);
        BorderEngine engine(p.space_ptr(), Coefficients::integers());
        std::vector<std::vector<bool>> family;
        for (int j = 0; j < 3; ++j)
            family.push_back(cli::audit_mask(p.space(), pair_seed, j));
        const Level x = Level::whole(p.space());
        const auto small = cohdim_small(engine, x, family), large = cohdim_large(engine, x, family);
        if (small.lower != 0 || small.upper != 0 || large.lower != 0 || large.upper != 0)
            o.fail(std::string(example_name(e)) + " dimensions not 0");
    }
    o.detail += ", cylinder cyclicity " + std::to_string(c.lower) + ", compact dimensions 0";
    return o;
}

SimplicialComplex random_complex(std::mt19937_64& rng, int vertices)
{
    std::vector<Simplex> tops;
    std::uniform_int_distribution<int> dim(0, 3), pick(0, vertices - 1);
    const int count = vertices + static_cast<int>(rng() % static_cast<unsigned>(vertices));
    for (int k = 0; k < count; ++k) {
        Simplex s;
        const int d = std::min(dim(rng), vertices - 1);
        while (static_cast<int>(s.size()) <= d) {
            const Vertex v = pick(rng);
            if (std::find(s.begin(), s.end(), v) == s.end())
                s.push_back(v);
        }
        std::sort(s.begin(), s.end());
        tops.push_back(s);
    }
    for (Vertex v = 0; v < vertices; ++v)
        tops.push_back({v});
    return SimplicialComplex(tops);
}

size_t even_torsion(const FgAbGroup& h)
{
    return static_cast<size_t>(
        std::count_if(h.torsion().begin(), h.torsion().end(), [](const Integer& d) { return d % Integer(2) == 0; }));
}

Outcome kernel_cross_checks()
{
    const auto t0 = Clock::now();
    Outcome o;
    std::mt19937_64 rng(pair_seed);
    const Coefficients z = Coefficients::integers();
    const FgAbGroup z2 = FgAbGroup::cyclic(2);
    size_t degrees = 0;
    for (int c = 0; c < random_complexes; ++c) {
        const int n_vertices = 3 + static_cast<int>(rng() % (max_complex_vertices - 2));
        const SimplicialComplex k = random_complex(rng, n_vertices);
        std::vector<Vertex> sub;
        if (c % 2)
            for (Vertex v : k.vertices())
                if (rng() % 3 == 0)
                    sub.push_back(v);
        const SimplicialPair p(k, k.full_subcomplex(sub));
        for (size_t n = 0; n <= static_cast<size_t>(k.dimension()) + 1; ++n) {
            const FgAbGroup hn = homology(p, n, z), hm = n ? homology(p, n - 1, z) : FgAbGroup();
            const size_t direct = mod2_betti(p, n);
            // (H_n (x) Z/2) + Tor(H_{n-1}, Z/2) counted by hand
            const size_t by_hand = hn.free_rank() + even_torsion(hn) + even_torsion(hm);
            const FgAbGroup uct = uct_coefficients(hn, hm, z2, Variant::homology);
            ++degrees;
            if (direct != by_hand || uct != FgAbGroup::from_cyclic(std::vector<Integer>(by_hand, Integer(2))))
                o.fail("complex " + std::to_string(c) + " degree " + std::to_string(n));
        }
    }
    std::uniform_int_distribution<int> size(1, max_matrix_size), entry(-max_entry, max_entry);
    for (int t = 0; t < random_matrices; ++t) {
        IntMatrix m(static_cast<size_t>(size(rng)), static_cast<size_t>(size(rng)));
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t col = 0; col < m.cols(); ++col)
                m(r, col) = Integer(entry(rng));
        const SmithForm f = smith_normal_form(m);
        const std::string which = "matrix " + std::to_string(t);
        if (f.U * m * f.V != f.D)
            o.fail(which + ": U M V != D");
        if (f.U.determinant().abs() != Integer(1) || f.V.determinant().abs() != Integer(1))
            o.fail(which + ": not unimodular");
        size_t nonzero = 0;
        for (size_t r = 0; r < f.D.rows(); ++r)
            for (size_t col = 0; col < f.D.cols(); ++col)
                if (r != col && f.D(r, col) != Integer(0))
                    o.fail(which + ": off-diagonal entry");
        const size_t diag = std::min(m.rows(), m.cols());
        for (size_t i = 0; i < diag; ++i) {
            const Integer& d = f.D(i, i);
            if (d < Integer(0))
                o.fail(which + ": negative invariant factor");
            if (d != Integer(0))
                ++nonzero;
            if (i + 1 < diag && d != Integer(0) && f.D(i + 1, i + 1) % d != Integer(0))
                o.fail(which + ": divisibility chain broken");
            if (i + 1 < diag && d == Integer(0) && f.D(i + 1, i + 1) != Integer(0))
                o.fail(which + ": zero before nonzero");
        }
        if (nonzero != m.rank() || nonzero != f.rank)
            o.fail(which + ": rank mismatch");
    }
    const double s = seconds_since(t0);
    if (s >= kernel_seconds)
        o.fail("runtime " + fixed(s));
    o.detail = std::to_string(random_complexes) + " complexes (" + std::to_string(degrees) + " degrees), " +
               std::to_string(random_matrices) + " matrices, " + fixed(s) + " < " + fixed(kernel_seconds);
    return o;
}

Outcome cli_determinism(const fs::path& golden)
{
    Outcome o;
    std::ifstream in(golden / "cases.txt");
    if (!in) {
        o.fail("no cases.txt in " + golden.string());
        o.detail = "golden files missing";
        return o;
    }
    const fs::path saved = fs::current_path();
    fs::current_path(golden);
    size_t count = 0;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream is(line);
        std::string name;
        int exit = 0;
        is >> name >> exit;
        std::vector<std::string> args;
        for (std::string w; is >> w;)
            args.push_back(w);
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        std::string text = out.str();
        if (!err.str().empty())
            text += "--- stderr\n" + err.str();
        std::ifstream expected(name + ".out", std::ios::binary);
        std::ostringstream want;
        want << expected.rdbuf();
        ++count;
        if (!expected || code != exit || text != want.str())
            o.fail(name);
    }
    fs::current_path(saved);
    size_t trips = 0;
    for (Example e : all_examples())
        for (int depth = 1; depth <= 3; ++depth) {
            const SpacePair p = generate_example(e, depth);
            const std::string text = render_space(p);
            const SpacePair q = parse_space_text(text);
            ++trips;
            if (render_space(q) != text || q.space().complex() != p.space().complex() || q.a_complex() != p.a_complex())
                o.fail(std::string(example_name(e)) + " depth " + std::to_string(depth) + " round trip");
        }
    o.detail = std::to_string(count) + " golden invocations, " + std::to_string(trips) + " round trips";
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    const fs::path golden = argc > 1 ? fs::path(argv[1]) : fs::path(CECHB_GOLDEN_DIR);
    report(1, "compact degeneration", [&] { return compact_degeneration(); });
    report(2, "end fixtures", [&] { return end_fixtures(); });
    report(3, "pair sequence exactness", [&] { return pair_exactness(); });
    report(4, "excision", [&] { return excision(); });
    report(5, "functoriality and naturality", [&] { return functoriality_naturality(); });
    report(6, "triple sequences", [&] { return triples(); });
    report(7, "dimension inequalities", [&] { return dimensions(); });
    report(8, "kernel cross-checks", [&] { return kernel_cross_checks(); });
    report(9, "cli determinism", [&] { return cli_determinism(golden); });
    std::cout << (failures ? std::to_string(failures) + " criteria failed\n" : "all criteria passed\n");
    return failures ? 1 : 0;
}
