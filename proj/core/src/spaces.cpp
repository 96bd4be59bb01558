#include "cechborder/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_map>

namespace cechb {

namespace {

struct Token {
    bool number;
    std::string_view text;
};

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        const bool sign_start = s[i] == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])) &&
                                (i == 0 || !std::isalnum(static_cast<unsigned char>(s[i - 1])));
        if (sign_start || std::isdigit(static_cast<unsigned char>(s[i]))) {
            size_t j = i + (sign_start ? 1 : 0);
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            out.push_back({true, s.substr(i, j - i)});
            i = j;
        } else {
            size_t j = i;
            while (j < s.size() && !std::isdigit(static_cast<unsigned char>(s[j])) &&
                   !(s[j] == '-' && j + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[j + 1])) &&
                     (j == 0 || !std::isalnum(static_cast<unsigned char>(s[j - 1])))))
                ++j;
            if (j == i)
                ++j;
            out.push_back({false, s.substr(i, j - i)});
            i = j;
        }
    }
    return out;
}

int compare_numbers(std::string_view a, std::string_view b)
{
    const bool na = a.starts_with('-'), nb = b.starts_with('-');
    if (na != nb)
        return na ? -1 : 1;
    std::string_view da = na ? a.substr(1) : a, db = nb ? b.substr(1) : b;
    while (da.size() > 1 && da.front() == '0')
        da.remove_prefix(1);
    while (db.size() > 1 && db.front() == '0')
        db.remove_prefix(1);
    int c = da.size() != db.size() ? (da.size() < db.size() ? -1 : 1) : da.compare(db);
    c = (c > 0) - (c < 0);
    return na ? -c : c;
}

}  // namespace

bool natural_less(std::string_view a, std::string_view b)
{
    const auto ta = tokenize(a), tb = tokenize(b);
    for (size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
        if (ta[i].number != tb[i].number)
            return ta[i].number;
        const int c = ta[i].number ? compare_numbers(ta[i].text, tb[i].text) : ta[i].text.compare(tb[i].text);
        if (c != 0)
            return c < 0;
    }
    if (ta.size() != tb.size())
        return ta.size() < tb.size();
    return a < b;
}

FilteredSpace::FilteredSpace(std::vector<std::string> labels, std::vector<int> stages,
                             const std::vector<Simplex>& simplices, std::optional<int> depth)
{
    const size_t n = labels.size();
    if (stages.size() != n)
        throw std::invalid_argument("one stage per vertex is required");
    for (size_t i = 0; i < n; ++i) {
        const auto& l = labels[i];
        if (l.empty() || std::any_of(l.begin(), l.end(), [](char c) {
                return std::isspace(static_cast<unsigned char>(c)) || c == '#' || c == '=';
            }))
            throw std::invalid_argument("invalid vertex label '" + l + "'");
        if (stages[i] < 0)
            throw std::invalid_argument("negative stage for vertex '" + l + "'");
    }
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return natural_less(labels[a], labels[b]); });
    std::vector<Vertex> new_id(n);
    for (size_t i = 0; i < n; ++i) {
        if (i > 0 && labels[order[i]] == labels[order[i - 1]])
            throw std::invalid_argument("duplicate vertex label '" + labels[order[i]] + "'");
        new_id[order[i]] = static_cast<Vertex>(i);
    }
    labels_.resize(n);
    stages_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        labels_[static_cast<size_t>(new_id[i])] = std::move(labels[i]);
        stages_[static_cast<size_t>(new_id[i])] = stages[i];
    }
    std::vector<Simplex> remapped;
    remapped.reserve(simplices.size() + n);
    for (size_t i = 0; i < n; ++i)
        remapped.push_back({static_cast<Vertex>(i)});
    for (const auto& s : simplices) {
        Simplex t;
        for (Vertex v : s) {
            if (v < 0 || static_cast<size_t>(v) >= n)
                throw std::invalid_argument("simplex refers to an unknown vertex");
            t.push_back(new_id[static_cast<size_t>(v)]);
        }
        remapped.push_back(std::move(t));
    }
    complex_ = SimplicialComplex(remapped);
    depth_ = depth.value_or(max_stage());
    if (depth_ < max_stage())
        throw std::invalid_argument("depth is smaller than the largest stage");
}

std::optional<Vertex> FilteredSpace::find(std::string_view label) const
{
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                               [](const std::string& a, std::string_view b) { return natural_less(a, b); });
    if (it == labels_.end() || *it != label)
        return std::nullopt;
    return static_cast<Vertex>(it - labels_.begin());
}

int FilteredSpace::max_stage() const noexcept
{
    int m = 0;
    for (int s : stages_)
        m = std::max(m, s);
    return m;
}

int FilteredSpace::max_spread() const
{
    int m = 0;
    for (const auto& e : complex_.simplices(1))
        m = std::max(m, std::abs(stage(e[0]) - stage(e[1])));
    return m;
}

SpacePair::SpacePair(std::shared_ptr<const FilteredSpace> space, std::vector<bool> in_a)
    : space_(std::move(space)), in_a_(std::move(in_a))
{
    if (!space_)
        throw std::invalid_argument("space pair needs a space");
    if (in_a_.empty())
        in_a_.assign(space_->vertex_count(), false);
    if (in_a_.size() != space_->vertex_count())
        throw std::invalid_argument("subset mask does not match the vertex count");
}

std::vector<Vertex> SpacePair::a_vertices() const
{
    std::vector<Vertex> out;
    for (size_t v = 0; v < in_a_.size(); ++v)
        if (in_a_[v])
            out.push_back(static_cast<Vertex>(v));
    return out;
}

bool SpacePair::a_empty() const
{
    return std::none_of(in_a_.begin(), in_a_.end(), [](bool b) { return b; });
}

SimplicialComplex SpacePair::a_complex() const
{
    return complex().full_subcomplex(a_vertices());
}

ProperModelMap::ProperModelMap(SpacePair source, SpacePair target, std::vector<Vertex> vertex_map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map))
{
    const FilteredSpace& x = source_.space();
    const FilteredSpace& y = target_.space();
    if (map_.size() != x.vertex_count())
        throw std::invalid_argument("vertex map must cover every source vertex");
    for (Vertex w : map_)
        if (w < 0 || static_cast<size_t>(w) >= y.vertex_count())
            throw std::invalid_argument("vertex map points outside the target");
    for (int n = 1; n <= x.complex().dimension(); ++n)
        for (const auto& s : x.complex().simplices(static_cast<size_t>(n))) {
            Simplex img;
            for (Vertex v : s)
                img.push_back((*this)(v));
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (!y.complex().contains(img))
                throw std::invalid_argument("vertex map is not simplicial at a simplex containing '" +
                                            x.label(s[0]) + "'");
        }
    if (!maps_into(source_.a_mask(), target_.a_mask()))
        throw std::invalid_argument("map does not carry A into B");

    bound_.assign(static_cast<size_t>(y.depth()) + 1, -1);
    for (size_t v = 0; v < map_.size(); ++v) {
        const int k = y.stage(map_[v]);
        bound_[static_cast<size_t>(k)] = std::max(bound_[static_cast<size_t>(k)], x.stage(static_cast<Vertex>(v)));
    }
    for (size_t k = 1; k < bound_.size(); ++k)
        bound_[k] = std::max(bound_[k], bound_[k - 1]);
    if (x.is_compact() && !y.is_compact())
        throw std::invalid_argument("maps from a compact model into a non-compact model are not supported");
    if (!x.is_compact()) {
        if (y.is_compact())
            throw NotProperError("a non-compact model maps into a compact one");
        for (int k = 0; k < y.depth(); ++k)
            if (bound_[static_cast<size_t>(k)] >= x.depth())
                throw NotProperError("preimage of target stage " + std::to_string(k) + " reaches the source frontier");
    }
}

ProperModelMap ProperModelMap::identity(const SpacePair& pair)
{
    std::vector<Vertex> m(pair.space().vertex_count());
    std::iota(m.begin(), m.end(), 0);
    return ProperModelMap(pair, pair, std::move(m));
}

int ProperModelMap::source_stage(int target_stage) const
{
    if (source_.space().is_compact())
        return 0;
    if (target_stage < 0 || target_stage >= target_.space().depth())
        throw std::out_of_range("target stage outside the truncation");
    return std::max(0, bound_[static_cast<size_t>(target_stage)]);
}

bool ProperModelMap::maps_into(const std::vector<bool>& source_mask, const std::vector<bool>& target_mask) const
{
    for (size_t v = 0; v < map_.size(); ++v)
        if (source_mask.at(v) && !target_mask.at(static_cast<size_t>(map_[v])))
            return false;
    return true;
}

ProperModelMap compose(const ProperModelMap& g, const ProperModelMap& f)
{
    if (!(f.target() == g.source()))
        throw std::invalid_argument("composition of maps with mismatched pairs");
    std::vector<Vertex> m(f.vertex_map().size());
    for (size_t v = 0; v < m.size(); ++v)
        m[v] = g(f(static_cast<Vertex>(v)));
    return ProperModelMap(f.source(), g.target(), std::move(m));
}

namespace {

bool is_face(const Simplex& small, const Simplex& big)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Simplex sorted_union(const Simplex& a, const Simplex& b)
{
    Simplex u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
}

}  // namespace

StarUnionSet::StarUnionSet(const SimplicialComplex& k, std::vector<Simplex> cores)
{
    for (auto& c : cores) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (Vertex v : c)
            if (!k.has_vertex(v))
                throw std::invalid_argument("open set refers to unknown vertex " + std::to_string(v));
    }
    std::erase_if(cores, [&](const Simplex& c) { return c.empty() || !k.contains(c); });
    std::sort(cores.begin(), cores.end(), [](const Simplex& a, const Simplex& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    cores.erase(std::unique(cores.begin(), cores.end()), cores.end());
    for (const auto& c : cores)
        if (std::none_of(cores_.begin(), cores_.end(), [&](const Simplex& m) { return is_face(m, c); }))
            cores_.push_back(c);
    std::sort(cores_.begin(), cores_.end());
}

StarUnionSet StarUnionSet::of_vertices(const SimplicialComplex& k, const std::vector<Vertex>& vertices)
{
    std::vector<Simplex> cores;
    for (Vertex v : vertices)
        cores.push_back({v});
    return StarUnionSet(k, std::move(cores));
}

bool StarUnionSet::contains(const Simplex& s) const
{
    return std::any_of(cores_.begin(), cores_.end(), [&](const Simplex& c) { return is_face(c, s); });
}

bool StarUnionSet::subset_of(const StarUnionSet& other) const
{
    return std::all_of(cores_.begin(), cores_.end(), [&](const Simplex& c) { return other.contains(c); });
}

bool StarUnionSet::meets(const std::vector<bool>& mask) const
{
    return std::any_of(cores_.begin(), cores_.end(), [&](const Simplex& c) {
        return std::all_of(c.begin(), c.end(), [&](Vertex v) { return mask.at(static_cast<size_t>(v)); });
    });
}

std::vector<Vertex> StarUnionSet::core_vertices() const
{
    std::vector<Vertex> out;
    for (const auto& c : cores_)
        out.insert(out.end(), c.begin(), c.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

StarUnionSet intersect(const SimplicialComplex& k, const StarUnionSet& a, const StarUnionSet& b)
{
    std::vector<Simplex> cores;
    for (const auto& x : a.cores())
        for (const auto& y : b.cores()) {
            Simplex u = sorted_union(x, y);
            if (k.contains(u))
                cores.push_back(std::move(u));
        }
    return StarUnionSet(k, std::move(cores));
}

StarUnionSet remove_closed(const SimplicialComplex& k, const StarUnionSet& a, const std::vector<bool>& mask)
{
    std::vector<Simplex> cores;
    for (const auto& c : a.cores()) {
        const bool inside = std::all_of(c.begin(), c.end(), [&](Vertex v) { return mask.at(static_cast<size_t>(v)); });
        if (!inside) {
            cores.push_back(c);
            continue;
        }
        for (Vertex w : k.neighbors(c.front())) {
            if (mask.at(static_cast<size_t>(w)))
                continue;
            Simplex u = sorted_union(c, Simplex{w});
            if (k.contains(u))
                cores.push_back(std::move(u));
        }
    }
    return StarUnionSet(k, std::move(cores));
}

StarUnionSet preimage(const ProperModelMap& f, const StarUnionSet& set)
{
    const SimplicialComplex& k = f.source().complex();
    auto in_preimage = [&](const Simplex& s) {
        Simplex img;
        for (Vertex v : s)
            img.push_back(f(v));
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        return set.contains(img);
    };
    // Minimal simplices of the preimage: members none of whose facets are members.
    std::vector<Simplex> cores;
    for (int n = 0; n <= k.dimension(); ++n)
        for (const auto& s : k.simplices(static_cast<size_t>(n))) {
            if (!in_preimage(s))
                continue;
            bool minimal = true;
            for (size_t i = 0; i < s.size() && s.size() > 1 && minimal; ++i) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                minimal = !in_preimage(face);
            }
            if (minimal)
                cores.push_back(s);
        }
    return StarUnionSet(k, std::move(cores));
}

std::vector<Example> all_examples()
{
    return {Example::point, Example::compact_triangle, Example::line,          Example::ray,
            Example::plane, Example::cylinder,         Example::two_rays_wedge};
}

std::string_view example_name(Example e)
{
    switch (e) {
    case Example::point: return "point";
    case Example::compact_triangle: return "compact_triangle";
    case Example::line: return "line";
    case Example::ray: return "ray";
    case Example::plane: return "plane";
    case Example::cylinder: return "cylinder";
    case Example::two_rays_wedge: return "two_rays_wedge";
    }
    return "";
}

std::optional<Example> parse_example(std::string_view name)
{
    for (Example e : all_examples())
        if (example_name(e) == name)
            return e;
    return std::nullopt;
}

namespace {

// Collects labelled vertices and simplices by label before building a space.
struct Builder {
    std::vector<std::string> labels;
    std::vector<int> stages;
    std::unordered_map<std::string, Vertex> ids;
    std::vector<Simplex> simplices;

    void vertex(const std::string& label, int stage)
    {
        ids.emplace(label, static_cast<Vertex>(labels.size()));
        labels.push_back(label);
        stages.push_back(stage);
    }
    void simplex(std::initializer_list<std::string> ls)
    {
        Simplex s;
        for (const auto& l : ls)
            s.push_back(ids.at(l));
        simplices.push_back(std::move(s));
    }
    SpacePair build()
    {
        return SpacePair(std::make_shared<FilteredSpace>(std::move(labels), std::move(stages), simplices));
    }
};

std::string at(int x, int y)
{
    return std::to_string(x) + "," + std::to_string(y);
}

}  // namespace

SpacePair generate_example(Example e, int depth)
{
    if (depth < 1 && e != Example::point && e != Example::compact_triangle)
        throw std::invalid_argument("example depth must be at least 1");
    Builder b;
    const int d = depth;
    switch (e) {
    case Example::point:
        b.vertex("0", 0);
        break;
    case Example::compact_triangle:
        for (int v = 0; v < 3; ++v)
            b.vertex(std::to_string(v), 0);
        b.simplex({"0", "1"});
        b.simplex({"1", "2"});
        b.simplex({"0", "2"});
        break;
    case Example::line:
        for (int v = -d; v <= d; ++v)
            b.vertex(std::to_string(v), std::abs(v));
        for (int v = -d; v < d; ++v)
            b.simplex({std::to_string(v), std::to_string(v + 1)});
        break;
    case Example::ray:
        for (int v = 0; v <= d; ++v)
            b.vertex(std::to_string(v), v);
        for (int v = 0; v < d; ++v)
            b.simplex({std::to_string(v), std::to_string(v + 1)});
        break;
    case Example::plane:
        for (int x = -d; x <= d; ++x)
            for (int y = -d; y <= d; ++y)
                b.vertex(at(x, y), std::max(std::abs(x), std::abs(y)));
        for (int x = -d; x < d; ++x)
            for (int y = -d; y < d; ++y) {
                b.simplex({at(x, y), at(x + 1, y), at(x + 1, y + 1)});
                b.simplex({at(x, y), at(x, y + 1), at(x + 1, y + 1)});
            }
        break;
    case Example::cylinder: {
        const int ring = 4;
        for (int k = 0; k < ring; ++k)
            for (int t = -d; t <= d; ++t)
                b.vertex(at(k, t), std::abs(t));
        for (int k = 0; k < ring; ++k) {
            const int k1 = (k + 1) % ring;
            for (int t = -d; t < d; ++t) {
                b.simplex({at(k, t), at(k1, t), at(k1, t + 1)});
                b.simplex({at(k, t), at(k, t + 1), at(k1, t + 1)});
            }
        }
        break;
    }
    case Example::two_rays_wedge:
        b.vertex("0", 0);
        for (const char* branch : {"a", "b"}) {
            for (int k = 1; k <= d; ++k)
                b.vertex(branch + std::to_string(k), k);
            b.simplex({"0", branch + std::string("1")});
            for (int k = 1; k < d; ++k)
                b.simplex({branch + std::to_string(k), branch + std::to_string(k + 1)});
        }
        break;
    }
    return b.build();
}

SpacePair generate_example(std::string_view name, int depth)
{
    auto e = parse_example(name);
    if (!e)
        throw std::invalid_argument("unknown example '" + std::string(name) + "'");
    return generate_example(*e, depth);
}

Subpair closed_subpair(const SpacePair& pair, const std::vector<Vertex>& vertices)
{
    const FilteredSpace& x = pair.space();
    std::vector<Vertex> keep = vertices;
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::unordered_map<Vertex, Vertex> local;
    std::vector<std::string> labels;
    std::vector<int> stages;
    for (Vertex v : keep) {
        if (v < 0 || static_cast<size_t>(v) >= x.vertex_count())
            throw std::invalid_argument("subpair vertex outside the space");
        local.emplace(v, static_cast<Vertex>(labels.size()));
        labels.push_back(x.label(v));
        stages.push_back(x.stage(v));
    }
    std::vector<Simplex> simplices;
    const SimplicialComplex sub = x.complex().full_subcomplex(keep);
    for (int n = 1; n <= sub.dimension(); ++n)
        for (const auto& s : sub.simplices(static_cast<size_t>(n))) {
            Simplex t;
            for (Vertex v : s)
                t.push_back(local.at(v));
            simplices.push_back(std::move(t));
        }
    auto space = std::make_shared<FilteredSpace>(labels, stages, simplices, x.depth());
    // Ids of the subspace follow the parent's natural order, so position i is keep[i].
    std::vector<bool> in_a(keep.size());
    for (size_t i = 0; i < keep.size(); ++i)
        in_a[i] = pair.in_a(keep[i]);
    SpacePair sp(space, std::move(in_a));
    return {sp, ProperModelMap(sp, pair, keep)};
}

Subpair excise(const SpacePair& pair, const StarUnionSet& u)
{
    const FilteredSpace& x = pair.space();
    const std::vector<Vertex> cores = u.core_vertices();
    for (Vertex v : cores) {
        if (!pair.in_a(v))
            throw std::invalid_argument("excision core vertex '" + x.label(v) + "' is not in A");
        for (Vertex w : x.complex().neighbors(v))
            if (!pair.in_a(w))
                throw std::invalid_argument("excision core vertex '" + x.label(v) + "' has neighbour '" + x.label(w) +
                                            "' outside A");
    }
    std::vector<Vertex> rest;
    for (size_t v = 0; v < x.vertex_count(); ++v)
        if (!std::binary_search(cores.begin(), cores.end(), static_cast<Vertex>(v)))
            rest.push_back(static_cast<Vertex>(v));
    return closed_subpair(pair, rest);
}

std::vector<bool> random_closed_mask(const FilteredSpace& space, unsigned long long seed)
{
    std::mt19937_64 rng(seed);
    std::vector<bool> mask(space.vertex_count(), false);
    std::deque<Vertex> queue;
    for (size_t v = 0; v < mask.size(); ++v)
        if (rng() % 4 == 0) {
            mask[v] = true;
            queue.push_back(static_cast<Vertex>(v));
        }
    std::vector<std::vector<Vertex>> up(space.vertex_count());
    for (const auto& e : space.complex().simplices(1)) {
        if (space.stage(e[1]) > space.stage(e[0]))
            up[static_cast<size_t>(e[0])].push_back(e[1]);
        else if (space.stage(e[0]) > space.stage(e[1]))
            up[static_cast<size_t>(e[1])].push_back(e[0]);
    }
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : up[static_cast<size_t>(v)])
            if (!mask[static_cast<size_t>(w)]) {
                mask[static_cast<size_t>(w)] = true;
                queue.push_back(w);
            }
    }
    return mask;
}

}  // namespace cechb
