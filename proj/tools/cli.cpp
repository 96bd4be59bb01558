#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "audit.hpp"
#include "cechborder/space_io.hpp"

namespace cechb::cli {

namespace {

struct Config {
    std::string example;
    std::string space_path;
    int depth = 5;
    std::string coeff = "Z";
    std::string degrees = "0..2";
    bool cohomology = false;
    std::optional<int> horizon;
    int window = 3;
    std::string format = "text";
    unsigned long long seed = 0;
    int random = 3;
    std::string suite = "all";
    std::string family_path;
};

struct Subject {
    std::string name;
    SpacePair pair;
};

std::pair<size_t, size_t> parse_degrees(const std::string& text)
{
    auto number = [&](std::string_view s) {
        size_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || p != s.data() + s.size())
            throw std::invalid_argument("bad degree range '" + text + "' (expected a..b)");
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const size_t n = number(text);
        return {n, n};
    }
    const size_t lo = number(std::string_view(text).substr(0, dots)), hi = number(std::string_view(text).substr(dots + 2));
    if (lo > hi)
        throw std::invalid_argument("empty degree range '" + text + "'");
    return {lo, hi};
}

Subject load_subject(const Config& c)
{
    if (!c.example.empty() && !c.space_path.empty())
        throw std::invalid_argument("give either --example or --space, not both");
    if (!c.space_path.empty())
        return {c.space_path, load_space(c.space_path)};
    if (c.example.empty())
        throw std::invalid_argument("one of --example or --space is required");
    auto e = parse_example(c.example);
    if (!e)
        throw std::invalid_argument("unknown example '" + c.example + "'");
    const bool compact = *e == Example::point || *e == Example::compact_triangle;
    return {c.example, generate_example(*e, compact ? 0 : c.depth)};
}

BorderOptions border_options(const Config& c, const FilteredSpace& x)
{
    if (c.window < 1)
        throw std::invalid_argument("--window must be at least 1");
    BorderOptions o;
    o.window = c.window;
    o.horizon = c.horizon;
    if (!x.is_compact()) {
        const int h = c.horizon.value_or(x.depth() - 1);
        if (h > x.depth() - 1)
            throw std::invalid_argument("--horizon " + std::to_string(h) + " exceeds depth - 1 = " +
                                        std::to_string(x.depth() - 1));
        if (h < c.window)
            throw std::invalid_argument("horizon " + std::to_string(h) + " is below the window " +
                                        std::to_string(c.window));
    }
    return o;
}

class Report {
public:
    Report(std::ostream& out, bool kv) : out_(out), kv_(kv) {}
    bool kv() const { return kv_; }
    void kv_line(const std::string& key, const std::string& value)
    {
        if (kv_)
            out_ << key << " = " << value << '\n';
    }
    void text_line(const std::string& line)
    {
        if (!kv_)
            out_ << line << '\n';
    }

private:
    std::ostream& out_;
    bool kv_;
};

void header(Report& r, const Subject& s, const BorderEngine& e, const Coefficients& g)
{
    const FilteredSpace& x = s.pair.space();
    const size_t a = s.pair.a_vertices().size();
    r.kv_line("space", s.name);
    r.kv_line("vertices", std::to_string(x.vertex_count()));
    r.kv_line("a_vertices", std::to_string(a));
    r.kv_line("depth", std::to_string(x.depth()));
    r.kv_line("horizon", x.is_compact() ? "compact" : std::to_string(e.last_stage()));
    r.kv_line("window", std::to_string(e.options().window));
    r.kv_line("coefficients", g.render());
    std::ostringstream t;
    t << "# " << s.name << (a ? " relative to A (" + std::to_string(a) + " vertices)" : "") << ", ";
    if (x.is_compact())
        t << "compact";
    else
        t << "depth " << x.depth() << ", stages 0.." << e.last_stage();
    t << ", window " << e.options().window << ", G = " << g.render();
    r.text_line(t.str());
}

std::string verdict_note(const LimitResult& l)
{
    if (l.stabilized())
        return "stable from stage " + std::to_string(l.stable_stage);
    return "no stable window of " + std::to_string(l.window) + " in stages 0.." + std::to_string(l.last_stage);
}

int cmd_compute(const Config& c, std::ostream& out)
{
    const Subject s = load_subject(c);
    const Coefficients g = Coefficients::parse(c.coeff);
    const auto [lo, hi] = parse_degrees(c.degrees);
    BorderEngine e(s.pair.space_ptr(), g, border_options(c, s.pair.space()));
    Report r(out, c.format == "kv");
    header(r, s, e, g);
    const Variant v = c.cohomology ? Variant::cohomology : Variant::homology;
    r.kv_line("variant", std::string(to_string(v)));
    const Level level = Level::of_pair(s.pair);
    bool inconclusive = false;
    for (size_t n = lo; n <= hi; ++n) {
        const std::string key = (c.cohomology ? "Hc_inf_" : "H_inf_") + std::to_string(n);
        if (n > static_cast<size_t>(e.nerve_dimension())) {
            r.kv_line(key, "0");
            r.kv_line(key + ".verdict", "vanishes");
            r.text_line(key + " = 0  [above nerve dimension " + std::to_string(e.nerve_dimension()) + "]");
            continue;
        }
        const LimitResult& l = e.limit(level, n, v);
        const std::string value = l.stabilized() ? g.render_value(l.group) : "inconclusive";
        inconclusive = inconclusive || !l.stabilized();
        r.kv_line(key, value);
        r.kv_line(key + ".verdict", l.stabilized() ? "stabilized" : "inconclusive");
        if (l.stabilized())
            r.kv_line(key + ".stage", std::to_string(l.stable_stage));
        r.text_line(key + " = " + value + "  [" + verdict_note(l) + "]");
    }
    return inconclusive ? ExitCode::inconclusive : ExitCode::ok;
}

std::string cyclicity_value(const CyclicityReport& c)
{
    if (c.exact)
        return c.lower < 0 ? "none" : std::to_string(c.lower);
    return "[" + (c.lower < 0 ? std::string("none") : std::to_string(c.lower)) + ", " + std::to_string(c.upper) + "]";
}

std::string witness(const DimensionReport& d, size_t family_size)
{
    if (d.witness_degree < 0)
        return "none";
    const std::string who = d.witness_member < 0 || static_cast<size_t>(d.witness_member) >= family_size
                                ? "empty set"
                                : "A#" + std::to_string(d.witness_member);
    return who + " degree " + std::to_string(d.witness_degree);
}

std::vector<std::vector<bool>> meet_all(const std::vector<std::vector<bool>>& family, size_t i)
{
    std::vector<std::vector<bool>> out;
    for (size_t k = 0; k < family.size(); ++k) {
        if (k == i)
            continue;
        auto m = family[k];
        for (size_t v = 0; v < m.size(); ++v)
            m[v] = m[v] && family[i][v];
        out.push_back(std::move(m));
    }
    return out;
}

int cmd_invariants(const Config& c, std::ostream& out)
{
    const Subject s = load_subject(c);
    const Coefficients g = Coefficients::parse(c.coeff);
    BorderEngine e(s.pair.space_ptr(), g, border_options(c, s.pair.space()));
    Report r(out, c.format == "kv");
    header(r, s, e, g);

    bool inconclusive = false, violated = false;
    for (Variant v : {Variant::homology, Variant::cohomology}) {
        const CyclicityReport cy = cyclicity(e, Level::of_pair(s.pair), v);
        inconclusive = inconclusive || !cy.exact;
        const std::string name = v == Variant::homology ? "homology" : "cohomology";
        r.kv_line("cyclicity." + name, cyclicity_value(cy));
        r.text_line("cyclicity (" + name + ") = " + cyclicity_value(cy) + "  [degrees 0.." +
                    std::to_string(cy.nerve_dimension) + (cy.exact ? "" : ", some degrees inconclusive") + "]");
    }
    r.kv_line("nerve_dimension", std::to_string(e.nerve_dimension()));
    r.text_line("nerve dimension = " + std::to_string(e.nerve_dimension()));

    std::vector<std::vector<bool>> family;
    if (!c.family_path.empty()) {
        family = load_family(c.family_path, s.pair.space());
    } else {
        for (int j = 0; j < c.random; ++j)
            family.push_back(audit_mask(s.pair.space(), c.seed, j));
    }
    r.kv_line("family", std::to_string(family.size()));
    r.text_line("tested family: " + std::to_string(family.size()) +
                (c.family_path.empty() ? " random closed subsets (seed " + std::to_string(c.seed) + ")"
                                       : " subsets from " + c.family_path));

    const Level x = Level::whole(s.pair.space());
    std::optional<DimensionReport> small;
    if (g.rational) {
        r.kv_line("small", "unavailable over Q");
        r.text_line("small dimension: unavailable over Q (needs maps)");
    } else {
        small = cohdim_small(e, x, family);
        r.kv_line("small.lower", std::to_string(small->lower));
        r.kv_line("small.upper", std::to_string(small->upper));
        r.kv_line("small.witness", witness(*small, family.size()));
        r.kv_line("small.tested", std::to_string(small->tested));
        r.kv_line("small.untested", std::to_string(small->untested));
        r.text_line("small dimension: " + std::to_string(small->lower) + " <= d <= " + std::to_string(small->upper) +
                    "  [witness " + witness(*small, family.size()) + "; tested " + std::to_string(small->tested) +
                    ", untested " + std::to_string(small->untested) + "; lower bound relative to tested family]");
    }
    const DimensionReport large = cohdim_large(e, x, family);
    const std::string large_lower = large.lower < 0 ? "none" : std::to_string(large.lower);
    r.kv_line("large.lower", large_lower);
    r.kv_line("large.upper", std::to_string(large.upper));
    r.kv_line("large.witness", witness(large, family.size()));
    r.kv_line("large.tested", std::to_string(large.tested));
    r.kv_line("large.untested", std::to_string(large.untested));
    r.text_line("large dimension: " + large_lower + " <= D <= " + std::to_string(large.upper) + "  [witness " +
                witness(large, family.size()) + "; tested " + std::to_string(large.tested) + ", untested " +
                std::to_string(large.untested) + "; lower bound relative to tested family]");
    if (small) {
        const bool holds = small->lower <= large.upper;
        violated = violated || !holds;
        const std::string v = std::string(holds ? "holds" : "fails") + " (" + std::to_string(small->lower) +
                              " <= " + std::to_string(large.upper) + ")";
        r.kv_line("check.d_le_D", v);
        r.text_line("d <= D: " + v);
    }

    for (size_t i = 0; i < family.size(); ++i) {
        const auto inside = meet_all(family, i);
        auto matched = family;
        matched.insert(matched.end(), inside.begin(), inside.end());
        const Level a = Level::absolute(family[i]);
        const std::string tag = "A#" + std::to_string(i);
        auto line = [&](const std::string& what, const DimensionReport& da, const DimensionReport& dx) {
            std::string v;
            if (da.untested + dx.untested > 0)
                v = "untested";
            else {
                const bool holds = da.lower <= dx.lower;
                violated = violated || !holds;
                auto bound = [](int b) { return b < 0 ? std::string("none") : std::to_string(b); };
                v = std::string(holds ? "holds" : "fails") + " (" + bound(da.lower) + " <= " + bound(dx.lower) + ")";
            }
            r.kv_line("monotone." + std::to_string(i) + "." + what, v);
            r.text_line(std::string(what == "small" ? "d" : "D") + "(" + tag + ") <= " + (what == "small" ? "d" : "D") +
                        "(X) on certified lower bounds: " + v);
        };
        if (small)
            line("small", cohdim_small(e, a, inside), cohdim_small(e, x, matched));
        line("large", cohdim_large(e, a, inside), cohdim_large(e, x, matched));
    }
    if (violated)
        return ExitCode::audit_failure;
    return inconclusive ? ExitCode::inconclusive : ExitCode::ok;
}

int cmd_audit(const Config& c, std::ostream& out)
{
    AuditOptions o;
    if (!c.example.empty()) {
        o.example = parse_example(c.example);
        if (!o.example)
            throw std::invalid_argument("unknown example '" + c.example + "'");
    }
    if (!c.space_path.empty())
        o.space = load_space(c.space_path);
    o.depth = c.depth;
    o.seed = c.seed;
    o.random = c.random;
    if (c.window < 1)
        throw std::invalid_argument("--window must be at least 1");
    o.border.window = c.window;
    o.border.horizon = c.horizon;

    std::vector<std::string> suites;
    if (c.suite == "all")
        suites = suite_names();
    else if (std::find(suite_names().begin(), suite_names().end(), c.suite) != suite_names().end())
        suites = {c.suite};
    else
        throw std::invalid_argument("unknown audit suite '" + c.suite + "'");
    if (o.space)
        std::erase_if(suites, [](const std::string& s) { return s != "exactness" && s != "triple" && s != "dimensions"; });

    Report r(out, c.format == "kv");
    size_t passed = 0, failed = 0;
    for (const auto& suite : suites)
        for (const auto& l : run_suite(suite, o)) {
            (l.pass ? passed : failed) += 1;
            r.kv_line(l.suite + "." + l.subject, l.pass ? "pass" : "fail");
            r.kv_line(l.suite + "." + l.subject + ".detail", l.detail);
            r.text_line(std::string(l.pass ? "PASS" : "FAIL") + "  " + l.suite + "  " + l.subject + "  " + l.detail);
        }
    r.kv_line("audits.passed", std::to_string(passed));
    r.kv_line("audits.failed", std::to_string(failed));
    r.text_line("audits: " + std::to_string(passed) + " passed, " + std::to_string(failed) + " failed");
    return failed ? ExitCode::audit_failure : ExitCode::ok;
}

int cmd_render(const Config& c, std::ostream& out)
{
    out << render_space(load_subject(c).pair);
    return ExitCode::ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config c;
    CLI::App app{"Cech border homology and cohomology of truncated non-compact models", "cech-border"};
    app.require_subcommand(1);

    auto subject = [&](CLI::App* s) {
        s->add_option("--example", c.example, "generated model: point, compact_triangle, line, ray, plane, cylinder, "
                                              "two_rays_wedge");
        auto* space = s->add_option("--space", c.space_path, "space description file");
        s->add_option("--depth", c.depth, "truncation depth of generated models")
            ->check(CLI::Range(1, 64))
            ->excludes(space);
    };
    auto limits = [&](CLI::App* s) {
        s->add_option("--coeff", c.coeff, "coefficients: Z, Z/<m>, Q, or sums with +");
        s->add_option("--horizon", c.horizon, "last cover stage used (default depth - 1)");
        s->add_option("--window", c.window, "stabilization window");
        s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "kv"}));
    };

    auto* compute = app.add_subcommand("compute", "border (co)homology groups");
    subject(compute);
    limits(compute);
    compute->add_option("--degrees", c.degrees, "degree range a..b");
    compute->add_flag("--cohomology", c.cohomology, "cohomology instead of homology");

    auto* audit = app.add_subcommand("audit", "run invariant audits");
    subject(audit);
    audit->add_option("--horizon", c.horizon, "last cover stage used (default depth - 1)");
    audit->add_option("--window", c.window, "stabilization window");
    audit->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "kv"}));
    audit->add_option("--suite", c.suite, "all, compact, functoriality, naturality, exactness, triple, excision, dimensions");
    audit->add_option("--seed", c.seed, "seed for random subpairs");
    audit->add_option("--random", c.random, "random subpairs per fixture")->check(CLI::Range(0, 1000));

    auto* invariants = app.add_subcommand("invariants", "cyclicity and border cohomological dimensions");
    subject(invariants);
    limits(invariants);
    invariants->add_option("--family", c.family_path, "family file, one vertex label list per line");
    invariants->add_option("--seed", c.seed, "seed for the random family");
    invariants->add_option("--random", c.random, "size of the random family without --family")->check(CLI::Range(0, 1000));

    auto* render = app.add_subcommand("render", "print a model in the space file format");
    subject(render);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitCode::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ExitCode::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::parse_failure;
    }

    try {
        if (compute->parsed())
            return cmd_compute(c, out);
        if (audit->parsed())
            return cmd_audit(c, out);
        if (invariants->parsed())
            return cmd_invariants(c, out);
        return cmd_render(c, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::parse_failure;
    } catch (const InconclusiveError& e) {
        err << "inconclusive: " << e.what() << '\n';
        return ExitCode::inconclusive;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::parse_failure;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::parse_failure;
    }
}

}  // namespace cechb::cli
