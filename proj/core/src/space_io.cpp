#include "cechborder/space_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cechb {

ParseError::ParseError(int line_no, const std::string& what)
    : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what : what), line(line_no)
{
}

namespace {

std::vector<std::string> words(const std::string& line)
{
    std::istringstream is(line.substr(0, line.find('#')));
    std::vector<std::string> out;
    for (std::string w; is >> w;)
        out.push_back(w);
    return out;
}

int parse_count(const std::string& text, int line, const char* what)
{
    int v = 0;
    const char* end = text.data() + text.size();
    auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || p != end || v < 0)
        throw ParseError(line, std::string("malformed ") + what + " '" + text + "'");
    return v;
}

struct VertexLine {
    int stage;
    bool in_a;
    int line;
};

}  // namespace

SpacePair parse_space(std::istream& in)
{
    std::map<std::string, VertexLine> vertices;
    std::vector<std::string> order;
    std::map<std::vector<std::string>, int> simplices;  // sorted labels -> first line
    std::optional<int> depth;
    int depth_line = 0;

    std::string raw;
    for (int line = 1; std::getline(in, raw); ++line) {
        const auto w = words(raw);
        if (w.empty())
            continue;
        if (w[0] == "vertex") {
            if (w.size() < 3 || w.size() > 4)
                throw ParseError(line, "expected 'vertex <label> stage=<k> [inA]'");
            if (w[2].rfind("stage=", 0) != 0)
                throw ParseError(line, "expected stage=<k> after the vertex label");
            const int stage = parse_count(w[2].substr(6), line, "stage");
            bool in_a = false;
            if (w.size() == 4) {
                if (w[3] != "inA")
                    throw ParseError(line, "unknown vertex flag '" + w[3] + "'");
                in_a = true;
            }
            auto [it, fresh] = vertices.emplace(w[1], VertexLine{stage, in_a, line});
            if (fresh)
                order.push_back(w[1]);
            else if (it->second.stage != stage || it->second.in_a != in_a)
                throw ParseError(line, "vertex '" + w[1] + "' conflicts with line " + std::to_string(it->second.line));
        } else if (w[0] == "simplex") {
            if (w.size() < 3)
                throw ParseError(line, "a simplex line needs at least two vertices");
            std::vector<std::string> s(w.begin() + 1, w.end());
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw ParseError(line, "simplex repeats a vertex");
            simplices.emplace(std::move(s), line);
        } else if (w[0] == "depth") {
            if (w.size() != 2)
                throw ParseError(line, "expected 'depth <k>'");
            const int d = parse_count(w[1], line, "depth");
            if (depth && *depth != d)
                throw ParseError(line, "depth conflicts with line " + std::to_string(depth_line));
            depth = d;
            depth_line = line;
        } else {
            throw ParseError(line, "unknown directive '" + w[0] + "'");
        }
    }

    std::map<std::string, int> pos;
    std::vector<std::string> labels;
    std::vector<int> stages;
    for (const auto& l : order) {
        pos.emplace(l, static_cast<int>(labels.size()));
        labels.push_back(l);
        stages.push_back(vertices.at(l).stage);
    }
    std::vector<Simplex> list;
    for (const auto& [s, line] : simplices) {
        Simplex ids;
        for (const auto& l : s) {
            auto it = pos.find(l);
            if (it == pos.end())
                throw ParseError(line, "unknown vertex '" + l + "'");
            ids.push_back(it->second);
        }
        // Every face of dimension at least one must be listed as well.
        if (s.size() > 2)
            for (size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<std::string> face;
                for (size_t k = 0; k < s.size(); ++k)
                    if (k != drop)
                        face.push_back(s[k]);
                if (!simplices.contains(face)) {
                    std::string named;
                    for (const auto& f : face)
                        named += (named.empty() ? "" : " ") + f;
                    throw ParseError(line, "face {" + named + "} is not listed");
                }
            }
        list.push_back(std::move(ids));
    }
    if (labels.empty())
        throw ParseError(0, "space has no vertices");
    auto space = [&] {
        try {
            return std::make_shared<const FilteredSpace>(labels, stages, list, depth);
        } catch (const std::invalid_argument& e) {
            throw ParseError(depth_line, e.what());
        }
    }();
    std::vector<bool> in_a(labels.size(), false);
    for (const auto& [l, v] : vertices)
        in_a[static_cast<size_t>(*space->find(l))] = v.in_a;
    return SpacePair(space, std::move(in_a));
}

SpacePair parse_space_text(const std::string& text)
{
    std::istringstream is(text);
    return parse_space(is);
}

SpacePair load_space(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    return parse_space(in);
}

std::string render_space(const SpacePair& pair)
{
    const FilteredSpace& x = pair.space();
    std::ostringstream os;
    os << "depth " << x.depth() << '\n';
    for (size_t v = 0; v < x.vertex_count(); ++v) {
        const Vertex u = static_cast<Vertex>(v);
        os << "vertex " << x.label(u) << " stage=" << x.stage(u) << (pair.in_a(u) ? " inA" : "") << '\n';
    }
    for (size_t n = 1; n <= static_cast<size_t>(std::max(0, x.complex().dimension())); ++n)
        for (const auto& s : x.complex().simplices(n)) {
            os << "simplex";
            for (Vertex u : s)
                os << ' ' << x.label(u);
            os << '\n';
        }
    return os.str();
}

std::vector<std::vector<bool>> parse_family(std::istream& in, const FilteredSpace& space)
{
    std::vector<std::vector<bool>> out;
    std::string raw;
    for (int line = 1; std::getline(in, raw); ++line) {
        const auto w = words(raw);
        if (w.empty())
            continue;
        std::vector<bool> mask(space.vertex_count(), false);
        for (const auto& l : w) {
            auto v = space.find(l);
            if (!v)
                throw ParseError(line, "unknown vertex '" + l + "'");
            mask[static_cast<size_t>(*v)] = true;
        }
        out.push_back(std::move(mask));
    }
    return out;
}

std::vector<std::vector<bool>> load_family(const std::string& path, const FilteredSpace& space)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    return parse_family(in, space);
}

}  // namespace cechb
