#include "cechborder/simplicial.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace cechb {

size_t SimplexHash::operator()(const Simplex& s) const noexcept
{
    size_t h = s.size() * 0x9e3779b97f4a7c15ULL;
    for (Vertex v : s)
        h ^= static_cast<size_t>(static_cast<uint32_t>(v)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

namespace {

Simplex normalized(Simplex s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::string describe(const Simplex& s)
{
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

Simplex drop(const Simplex& s, size_t i)
{
    Simplex f;
    f.reserve(s.size() - 1);
    for (size_t k = 0; k < s.size(); ++k)
        if (k != i)
            f.push_back(s[k]);
    return f;
}

}  // namespace

SimplicialComplex::SimplicialComplex(const std::vector<Simplex>& simplices)
{
    std::unordered_set<Simplex, SimplexHash> all;
    for (const auto& raw : simplices) {
        const Simplex s = normalized(raw);
        if (s.empty())
            continue;
        if (s.size() > 24)
            throw std::invalid_argument("simplex with more than 24 vertices");
        if (all.contains(s))
            continue;
        const uint32_t full = (1u << s.size()) - 1;
        for (uint32_t mask = 1; mask <= full; ++mask) {
            Simplex f;
            for (size_t i = 0; i < s.size(); ++i)
                if (mask & (1u << i))
                    f.push_back(s[i]);
            all.insert(std::move(f));
        }
    }
    for (const auto& s : all) {
        if (by_dim_.size() < s.size())
            by_dim_.resize(s.size());
        by_dim_[s.size() - 1].push_back(s);
    }
    for (auto& level : by_dim_) {
        std::sort(level.begin(), level.end());
        for (size_t i = 0; i < level.size(); ++i)
            index_.emplace(level[i], i);
    }
    if (!by_dim_.empty())
        for (const auto& s : by_dim_[0])
            vertices_.push_back(s[0]);
}

const std::vector<Simplex>& SimplicialComplex::simplices(size_t n) const
{
    static const std::vector<Simplex> none;
    return n < by_dim_.size() ? by_dim_[n] : none;
}

std::optional<size_t> SimplicialComplex::index(const Simplex& s) const
{
    auto it = index_.find(s);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

SimplicialComplex SimplicialComplex::full_subcomplex(const std::vector<Vertex>& vertices) const
{
    std::unordered_set<Vertex> keep(vertices.begin(), vertices.end());
    return filter([&](const Simplex& s) {
        return std::all_of(s.begin(), s.end(), [&](Vertex v) { return keep.contains(v); });
    });
}

SimplicialComplex SimplicialComplex::filter(const std::function<bool(const Simplex&)>& keep) const
{
    std::vector<Simplex> kept;
    for (const auto& level : by_dim_)
        for (const auto& s : level)
            if (keep(s))
                kept.push_back(s);
    return SimplicialComplex(kept);
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const
{
    for (const auto& [s, i] : index_)
        if (!other.contains(s))
            return false;
    return true;
}

std::vector<Vertex> SimplicialComplex::neighbors(Vertex v) const
{
    std::vector<Vertex> out;
    for (const auto& e : simplices(1)) {
        if (e[0] == v)
            out.push_back(e[1]);
        else if (e[1] == v)
            out.push_back(e[0]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SimplicialPair::SimplicialPair(SimplicialComplex total, SimplicialComplex sub)
    : total_(std::move(total)), sub_(std::move(sub))
{
    if (!sub_.is_subcomplex_of(total_))
        throw std::invalid_argument("subcomplex is not contained in the total complex");
    relative_.resize(static_cast<size_t>(std::max(0, total_.dimension() + 1)));
    for (size_t n = 0; n < relative_.size(); ++n)
        for (const auto& s : total_.simplices(n))
            if (!sub_.contains(s)) {
                relative_index_.emplace(s, relative_[n].size());
                relative_[n].push_back(s);
            }
}

const std::vector<Simplex>& SimplicialPair::relative_simplices(size_t n) const
{
    static const std::vector<Simplex> none;
    return n < relative_.size() ? relative_[n] : none;
}

std::optional<size_t> SimplicialPair::relative_index(const Simplex& s) const
{
    auto it = relative_index_.find(s);
    if (it == relative_index_.end())
        return std::nullopt;
    return it->second;
}

SimplicialMap::SimplicialMap(std::shared_ptr<const SimplicialPair> source, std::shared_ptr<const SimplicialPair> target,
                             VertexMap vertex_map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map))
{
    for (Vertex v : source_->total().vertices()) {
        auto it = map_.find(v);
        if (it == map_.end())
            throw std::invalid_argument("vertex map is undefined at " + std::to_string(v));
    }
    for (int n = 0; n <= source_->total().dimension(); ++n)
        for (const auto& s : source_->total().simplices(static_cast<size_t>(n))) {
            const Simplex img = image(s);
            if (!target_->total().contains(img))
                throw std::invalid_argument("image of simplex " + describe(s) + " is not a simplex");
            if (source_->sub().contains(s) && !target_->sub().contains(img))
                throw std::invalid_argument("image of subcomplex simplex " + describe(s) + " leaves the subcomplex");
        }
}

SimplicialMap SimplicialMap::identity(std::shared_ptr<const SimplicialPair> pair)
{
    VertexMap m;
    for (Vertex v : pair->total().vertices())
        m.emplace(v, v);
    return SimplicialMap(pair, pair, std::move(m));
}

Simplex SimplicialMap::image(const Simplex& s) const
{
    Simplex img;
    img.reserve(s.size());
    for (Vertex v : s)
        img.push_back(map_.at(v));
    return normalized(std::move(img));
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f)
{
    if (!(f.target() == g.source()))
        throw std::invalid_argument("composition of simplicial maps with mismatched pairs");
    VertexMap m;
    for (const auto& [v, w] : f.vertex_map())
        m.emplace(v, g(w));
    return SimplicialMap(f.source_ptr(), g.target_ptr(), std::move(m));
}

IntMatrix boundary_matrix(const SimplicialPair& pair, size_t n)
{
    const auto& cols = pair.relative_simplices(n);
    if (n == 0)
        return IntMatrix(0, cols.size());
    IntMatrix d(pair.relative_count(n - 1), cols.size());
    for (size_t c = 0; c < cols.size(); ++c)
        for (size_t i = 0; i < cols[c].size(); ++i) {
            auto r = pair.relative_index(drop(cols[c], i));
            if (r)
                d(*r, c) += (i % 2 == 0) ? 1 : -1;
        }
    return d;
}

std::vector<IntMatrix> boundary_matrices(const SimplicialPair& pair, size_t max_degree)
{
    std::vector<IntMatrix> out;
    for (size_t n = 0; n <= max_degree; ++n)
        out.push_back(boundary_matrix(pair, n));
    return out;
}

IntMatrix chain_map(const SimplicialMap& f, size_t n)
{
    const auto& cols = f.source().relative_simplices(n);
    IntMatrix m(f.target().relative_count(n), cols.size());
    for (size_t c = 0; c < cols.size(); ++c) {
        Simplex img;
        for (Vertex v : cols[c])
            img.push_back(f(v));
        int inversions = 0;
        bool degenerate = false;
        for (size_t i = 0; i < img.size(); ++i)
            for (size_t j = i + 1; j < img.size(); ++j) {
                if (img[i] == img[j])
                    degenerate = true;
                else if (img[i] > img[j])
                    ++inversions;
            }
        if (degenerate)
            continue;
        std::sort(img.begin(), img.end());
        auto r = f.target().relative_index(img);
        if (r)
            m(*r, c) = (inversions % 2 == 0) ? 1 : -1;
    }
    return m;
}

namespace {

// Direct sum of per-summand lattices inside (Z^dim)^k.
Lattice block_sum(size_t dim, const std::vector<Lattice>& parts)
{
    std::vector<IntVector> gens;
    for (size_t k = 0; k < parts.size(); ++k)
        for (const auto& b : parts[k].basis()) {
            IntVector v(dim * parts.size());
            for (size_t i = 0; i < dim; ++i)
                v[k * dim + i] = b[i];
            gens.push_back(std::move(v));
        }
    return Lattice::span(dim * parts.size(), std::move(gens));
}

Lattice with_multiples(Lattice l, const Integer& m)
{
    if (m.is_zero())
        return l;
    return l + Lattice::scaled(l.ambient_dim(), m);
}

void require_integral(const Coefficients& g)
{
    if (g.rational)
        throw std::invalid_argument("rational coefficients support group values only, not generators or maps");
}

}  // namespace

HomologyModule homology_module(const SimplicialPair& pair, size_t n, const Coefficients& g, Variant v)
{
    require_integral(g);
    const std::vector<Integer> orders = g.cyclic_orders();
    const size_t c = pair.relative_count(n);
    const IntMatrix d_n = boundary_matrix(pair, n);
    const IntMatrix d_next = boundary_matrix(pair, n + 1);

    // Cycles and boundaries modulo each cyclic order, computed once per distinct order.
    std::vector<Lattice> num, den;
    std::vector<std::pair<Integer, std::pair<Lattice, Lattice>>> cache;
    for (const auto& m : orders) {
        auto it = std::find_if(cache.begin(), cache.end(), [&](const auto& e) { return e.first == m; });
        if (it == cache.end()) {
            Lattice z, b;
            if (v == Variant::homology) {
                z = Lattice::preimage(d_n, Lattice::scaled(d_n.rows(), m));
                b = with_multiples(Lattice::span_columns(d_next), m);
            } else {
                const IntMatrix delta = d_next.transpose();
                z = Lattice::preimage(delta, Lattice::scaled(delta.rows(), m));
                b = with_multiples(Lattice::span_columns(d_n.transpose()), m);
            }
            cache.push_back({m, {std::move(z), std::move(b)}});
            it = std::prev(cache.end());
        }
        num.push_back(it->second.first);
        den.push_back(it->second.second);
    }
    HomologyModule out;
    out.degree = n;
    out.chain_rank = c;
    out.summands = orders.size();
    out.variant = v;
    out.quotient = Subquotient(block_sum(c, num), block_sum(c, den));
    return out;
}

namespace {

FgAbGroup integral_group(const SimplicialPair& pair, size_t n, Variant v)
{
    return homology_module(pair, n, Coefficients::integers(), v).group();
}

}  // namespace

FgAbGroup homology(const SimplicialPair& pair, size_t n, const Coefficients& g)
{
    if (g.rational) {
        const size_t c = pair.relative_count(n);
        return FgAbGroup::free(c - boundary_matrix(pair, n).rank() - boundary_matrix(pair, n + 1).rank());
    }
    const FgAbGroup h_n = integral_group(pair, n, Variant::homology);
    const FgAbGroup h_prev = n == 0 ? FgAbGroup() : integral_group(pair, n - 1, Variant::homology);
    return uct_coefficients(h_n, h_prev, g.group, Variant::homology);
}

FgAbGroup cohomology(const SimplicialPair& pair, size_t n, const Coefficients& g)
{
    if (g.rational)
        return homology(pair, n, g);
    const FgAbGroup h_n = integral_group(pair, n, Variant::homology);
    const FgAbGroup h_prev = n == 0 ? FgAbGroup() : integral_group(pair, n - 1, Variant::homology);
    return uct_coefficients(h_n, h_prev, g.group, Variant::cohomology);
}

namespace {

size_t rank_mod2(const IntMatrix& m)
{
    const size_t words = (m.cols() + 63) / 64;
    std::vector<std::vector<uint64_t>> rows(m.rows(), std::vector<uint64_t>(words));
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c)
            if (!divides(Integer(2), m(r, c)))
                rows[r][c / 64] |= uint64_t{1} << (c % 64);
    size_t rank = 0;
    for (size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
        const uint64_t bit = uint64_t{1} << (c % 64);
        size_t p = rank;
        while (p < rows.size() && !(rows[p][c / 64] & bit))
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[rank]);
        for (size_t r = 0; r < rows.size(); ++r)
            if (r != rank && (rows[r][c / 64] & bit))
                for (size_t w = 0; w < words; ++w)
                    rows[r][w] ^= rows[rank][w];
        ++rank;
    }
    return rank;
}

}  // namespace

size_t mod2_betti(const SimplicialPair& pair, size_t n)
{
    return pair.relative_count(n) - rank_mod2(boundary_matrix(pair, n)) - rank_mod2(boundary_matrix(pair, n + 1));
}

GroupHom induced_hom(const SimplicialMap& f, const HomologyModule& source, const HomologyModule& target)
{
    if (source.variant != target.variant || source.summands != target.summands || source.degree != target.degree)
        throw std::invalid_argument("modules computed with different coefficients, variants or degrees");
    const IntMatrix c = chain_map(f, source.degree);
    if (source.variant == Variant::homology)
        return induced_map(source.quotient, target.quotient, block_repeat(c, source.summands));
    return induced_map(target.quotient, source.quotient, block_repeat(c.transpose(), source.summands));
}

GroupHom induced_hom(const SimplicialMap& f, size_t n, const Coefficients& g, Variant v)
{
    return induced_hom(f, homology_module(f.source(), n, g, v), homology_module(f.target(), n, g, v));
}

bool contiguous(const SimplicialMap& f, const SimplicialMap& g)
{
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw std::invalid_argument("contiguity needs maps with the same source and target");
    const auto& src = f.source();
    for (int n = 0; n <= src.total().dimension(); ++n)
        for (const auto& s : src.total().simplices(static_cast<size_t>(n))) {
            Simplex u = f.image(s);
            const Simplex b = g.image(s);
            u.insert(u.end(), b.begin(), b.end());
            u = normalized(std::move(u));
            if (!f.target().total().contains(u))
                return false;
            if (src.sub().contains(s) && !f.target().sub().contains(u))
                return false;
        }
    return true;
}

IntMatrix connecting_chain_matrix(const SimplicialPair& pair, size_t n)
{
    if (n == 0)
        throw std::invalid_argument("connecting operator needs degree at least 1");
    const auto& rows = pair.sub().simplices(n - 1);
    const auto& cols = pair.relative_simplices(n);
    IntMatrix m(rows.size(), cols.size());
    for (size_t c = 0; c < cols.size(); ++c)
        for (size_t i = 0; i < cols[c].size(); ++i) {
            auto r = pair.sub().index(drop(cols[c], i));
            if (r)
                m(*r, c) += (i % 2 == 0) ? 1 : -1;
        }
    return m;
}

GroupHom pair_connecting(const SimplicialPair& pair, const HomologyModule& pair_module,
                         const HomologyModule& sub_module)
{
    const size_t n = pair_module.degree;
    const Variant v = pair_module.variant;
    if (n == 0) {
        if (v == Variant::homology)
            return GroupHom::zero(pair_module.group(), FgAbGroup());
        return GroupHom::zero(FgAbGroup(), pair_module.group());
    }
    if (sub_module.variant != v || sub_module.summands != pair_module.summands || sub_module.degree + 1 != n)
        throw std::invalid_argument("modules computed with different coefficients, variants or degrees");
    const IntMatrix m = connecting_chain_matrix(pair, n);
    if (v == Variant::homology)
        return induced_map(pair_module.quotient, sub_module.quotient, block_repeat(m, pair_module.summands));
    return induced_map(sub_module.quotient, pair_module.quotient, block_repeat(m.transpose(), pair_module.summands));
}

GroupHom pair_connecting(const SimplicialPair& pair, size_t n, const Coefficients& g, Variant v)
{
    const HomologyModule rel = homology_module(pair, n, g, v);
    if (n == 0)
        return pair_connecting(pair, rel, rel);
    return pair_connecting(pair, rel, homology_module(SimplicialPair(pair.sub()), n - 1, g, v));
}

}  // namespace cechb
