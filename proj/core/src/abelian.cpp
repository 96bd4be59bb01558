#include "cechborder/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <utility>

namespace cechb {

FgAbGroup FgAbGroup::from_cyclic(const std::vector<Integer>& orders)
{
    FgAbGroup g;
    IntVector finite;
    for (const auto& o : orders) {
        if (o.is_zero())
            ++g.free_rank_;
        else if (!o.abs().is_one())
            finite.push_back(o.abs());
    }
    if (finite.empty())
        return g;
    if (finite.size() == 1) {
        g.torsion_ = finite;
        return g;
    }
    SmithForm snf = smith_normal_form(IntMatrix::diagonal(finite.size(), finite.size(), finite),
                                      {.track_U = false, .track_V = false});
    for (const auto& d : snf.diagonal)
        if (!d.is_one())
            g.torsion_.push_back(d);
    return g;
}

FgAbGroup FgAbGroup::free(size_t rank)
{
    FgAbGroup g;
    g.free_rank_ = rank;
    return g;
}

FgAbGroup FgAbGroup::cyclic(const Integer& order)
{
    return from_cyclic({order});
}

Integer FgAbGroup::generator_order(size_t j) const
{
    if (j < free_rank_)
        return 0;
    return torsion_.at(j - free_rank_);
}

Lattice FgAbGroup::relations() const
{
    const size_t n = generator_count();
    std::vector<IntVector> gens;
    for (size_t t = 0; t < torsion_.size(); ++t) {
        IntVector v(n);
        v[free_rank_ + t] = torsion_[t];
        gens.push_back(std::move(v));
    }
    return Lattice::span(n, std::move(gens));
}

IntVector FgAbGroup::normalize(IntVector coords) const
{
    if (coords.size() != generator_count())
        throw std::invalid_argument("coordinate length does not match group");
    for (size_t t = 0; t < torsion_.size(); ++t)
        coords[free_rank_ + t] = mod_floor(coords[free_rank_ + t], torsion_[t]);
    return coords;
}

std::string FgAbGroup::render() const
{
    if (is_trivial())
        return "0";
    std::string out;
    if (free_rank_ == 1)
        out = "Z";
    else if (free_rank_ > 1)
        out = "Z^" + std::to_string(free_rank_);
    for (const auto& d : torsion_) {
        if (!out.empty())
            out += " + ";
        out += "Z/" + d.to_string();
    }
    return out;
}

std::string FgAbGroup::render_rational() const
{
    if (free_rank_ == 0)
        return "0";
    if (free_rank_ == 1)
        return "Q";
    return "Q^" + std::to_string(free_rank_);
}

namespace {

std::vector<Integer> cyclic_list(const FgAbGroup& g)
{
    std::vector<Integer> out(g.free_rank(), Integer(0));
    out.insert(out.end(), g.torsion().begin(), g.torsion().end());
    return out;
}

template <class F>
FgAbGroup bifunctor(const FgAbGroup& a, const FgAbGroup& b, F&& cyclic_rule)
{
    std::vector<Integer> orders;
    for (const auto& x : cyclic_list(a))
        for (const auto& y : cyclic_list(b)) {
            Integer o;
            if (cyclic_rule(x, y, o))
                orders.push_back(std::move(o));
        }
    return FgAbGroup::from_cyclic(orders);
}

}  // namespace

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b)
{
    std::vector<Integer> orders = cyclic_list(a);
    for (auto& o : cyclic_list(b))
        orders.push_back(std::move(o));
    return FgAbGroup::from_cyclic(orders);
}

FgAbGroup group_from_presentation(size_t generators, const IntMatrix& relations)
{
    if (relations.cols() > 0 && relations.rows() != generators)
        throw std::invalid_argument("relation matrix must have one row per generator");
    if (relations.cols() == 0)
        return FgAbGroup::free(generators);
    SmithForm snf = smith_normal_form(relations, {.track_U = false, .track_V = false});
    std::vector<Integer> orders(snf.diagonal.begin(), snf.diagonal.begin() + static_cast<std::ptrdiff_t>(snf.rank));
    orders.resize(generators, Integer(0));
    return FgAbGroup::from_cyclic(orders);
}

bool iso_check(const FgAbGroup& a, const FgAbGroup& b)
{
    return a == b;
}

// Cyclic rules, order 0 standing for Z.
FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b)
{
    return bifunctor(a, b, [](const Integer& x, const Integer& y, Integer& o) {
        o = gcd(x, y);
        return true;
    });
}

FgAbGroup tor(const FgAbGroup& a, const FgAbGroup& b)
{
    return bifunctor(a, b, [](const Integer& x, const Integer& y, Integer& o) {
        if (x.is_zero() || y.is_zero())
            return false;
        o = gcd(x, y);
        return true;
    });
}

FgAbGroup hom(const FgAbGroup& a, const FgAbGroup& b)
{
    return bifunctor(a, b, [](const Integer& x, const Integer& y, Integer& o) {
        if (x.is_zero()) {
            o = y;
            return true;
        }
        if (y.is_zero())
            return false;
        o = gcd(x, y);
        return true;
    });
}

FgAbGroup ext(const FgAbGroup& a, const FgAbGroup& b)
{
    return bifunctor(a, b, [](const Integer& x, const Integer& y, Integer& o) {
        if (x.is_zero())
            return false;
        o = y.is_zero() ? x : gcd(x, y);
        return true;
    });
}

std::string_view to_string(Variant v)
{
    return v == Variant::homology ? "homology" : "cohomology";
}

FgAbGroup uct_coefficients(const FgAbGroup& h_n, const FgAbGroup& h_nminus1, const FgAbGroup& g, Variant v)
{
    if (v == Variant::homology)
        return direct_sum(tensor(h_n, g), tor(h_nminus1, g));
    return direct_sum(hom(h_n, g), ext(h_nminus1, g));
}

GroupHom::GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
{
    const size_t m = target_.generator_count();
    const size_t n = source_.generator_count();
    if (matrix_.rows() != m || matrix_.cols() != n) {
        if (m == 0 || n == 0)
            matrix_ = IntMatrix(m, n);
        else
            throw std::invalid_argument("homomorphism matrix has the wrong shape");
    }
    for (size_t j = source_.free_rank(); j < n; ++j) {
        const Integer d = source_.generator_order(j);
        for (size_t i = 0; i < m; ++i) {
            Integer img = matrix_(i, j) * d;
            const Integer e = target_.generator_order(i);
            if (e.is_zero() ? !img.is_zero() : !divides(e, img))
                throw std::invalid_argument("homomorphism does not respect torsion of generator " + std::to_string(j));
        }
    }
    for (size_t i = target_.free_rank(); i < m; ++i) {
        const Integer e = target_.generator_order(i);
        for (size_t j = 0; j < n; ++j)
            matrix_(i, j) = mod_floor(matrix_(i, j), e);
    }
}

GroupHom GroupHom::identity(const FgAbGroup& g)
{
    return GroupHom(g, g, IntMatrix::identity(g.generator_count()));
}

GroupHom GroupHom::zero(const FgAbGroup& source, const FgAbGroup& target)
{
    return GroupHom(source, target, IntMatrix(target.generator_count(), source.generator_count()));
}

IntVector GroupHom::apply(const IntVector& x) const
{
    if (x.size() != source_.generator_count())
        throw std::invalid_argument("vector length does not match homomorphism source");
    if (matrix_.cols() == 0)
        return IntVector(target_.generator_count());
    return target_.normalize(matrix_.apply(x));
}

bool GroupHom::is_zero() const
{
    return matrix_.is_zero();
}

Lattice GroupHom::kernel_lattice() const
{
    return Lattice::preimage(matrix_, target_.relations());
}

Lattice GroupHom::image_lattice() const
{
    return Lattice::span_columns(matrix_) + target_.relations();
}

bool GroupHom::is_injective() const
{
    return kernel_lattice() == source_.relations();
}

bool GroupHom::is_surjective() const
{
    return image_lattice() == Lattice::full(target_.generator_count());
}

GroupHom GroupHom::inverse() const
{
    if (!is_isomorphism())
        throw std::invalid_argument("homomorphism is not invertible");
    const size_t m = target_.generator_count();
    const size_t n = source_.generator_count();
    std::vector<IntVector> gens;
    for (size_t c = 0; c < n; ++c)
        gens.push_back(matrix_.column(c));
    const Lattice rel = target_.relations();
    for (const auto& r : rel.basis())
        gens.push_back(r);
    IntMatrix inv(n, m);
    for (size_t i = 0; i < m; ++i) {
        IntVector e(m);
        e[i] = 1;
        auto c = solve_combination(m, gens, e);
        if (!c)
            throw std::logic_error("surjective homomorphism without preimage");
        for (size_t j = 0; j < n; ++j)
            inv(j, i) = (*c)[j];
    }
    return GroupHom(target_, source_, std::move(inv));
}

GroupHom compose(const GroupHom& g, const GroupHom& f)
{
    if (!(f.target() == g.source()))
        throw std::invalid_argument("composition of incompatible homomorphisms");
    IntMatrix prod(g.target().generator_count(), f.source().generator_count());
    if (g.matrix().cols() > 0)
        prod = g.matrix() * f.matrix();
    return GroupHom(f.source(), g.target(), std::move(prod));
}

KernelImageCokernel hom_kernel_image_cokernel(const GroupHom& h)
{
    const Lattice kernel = h.kernel_lattice();
    const Lattice image = h.image_lattice();
    const Lattice rel_t = h.target().relations();
    return {Subquotient(kernel, h.source().relations()).group(), Subquotient(image, rel_t).group(),
            Subquotient(Lattice::full(h.target().generator_count()), image).group()};
}

Subquotient::Subquotient(Lattice numerator, Lattice denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator))
{
    if (numerator_.ambient_dim() != denominator_.ambient_dim())
        throw std::invalid_argument("subquotient lattices live in different spaces");
    const size_t r = numerator_.rank();
    const size_t s = denominator_.rank();
    IntMatrix y(r, s);
    for (size_t j = 0; j < s; ++j) {
        auto c = numerator_.coordinates(denominator_.basis()[j]);
        if (!c)
            throw std::invalid_argument("denominator is not contained in numerator");
        for (size_t i = 0; i < r; ++i)
            y(i, j) = (*c)[i];
    }
    SmithForm snf = smith_normal_form(y, {.track_U = true, .track_V = false, .track_U_inverse = true});

    // Canonical order: free rows (past the rank) first, then torsion rows.
    std::vector<size_t> rows;
    std::vector<Integer> orders;
    for (size_t i = snf.rank; i < r; ++i) {
        rows.push_back(i);
        orders.push_back(0);
    }
    for (size_t i = 0; i < snf.rank; ++i)
        if (!snf.diagonal[i].is_one()) {
            rows.push_back(i);
            orders.push_back(snf.diagonal[i]);
        }
    group_ = FgAbGroup::from_cyclic(orders);

    to_canonical_ = IntMatrix(rows.size(), r);
    for (size_t k = 0; k < rows.size(); ++k)
        for (size_t c = 0; c < r; ++c)
            to_canonical_(k, c) = snf.U(rows[k], c);

    const size_t dim = numerator_.ambient_dim();
    for (size_t k = 0; k < rows.size(); ++k) {
        IntVector g(dim);
        for (size_t b = 0; b < r; ++b) {
            const Integer& coeff = snf.U_inv(b, rows[k]);
            if (coeff.is_zero())
                continue;
            for (size_t c = 0; c < dim; ++c)
                if (!numerator_.basis()[b][c].is_zero())
                    g[c].addmul(coeff, numerator_.basis()[b][c]);
        }
        generators_.push_back(std::move(g));
    }
}

IntVector Subquotient::coordinates(const IntVector& x) const
{
    auto c = numerator_.coordinates(x);
    if (!c)
        throw std::invalid_argument("vector is not in the subquotient numerator");
    if (to_canonical_.rows() == 0)
        return {};
    return group_.normalize(to_canonical_.apply(*c));
}

GroupHom induced_map(const Subquotient& source, const Subquotient& target, const IntMatrix& ambient_map)
{
    if (ambient_map.rows() != target.ambient_dim() || ambient_map.cols() != source.ambient_dim())
        throw std::invalid_argument("ambient map has the wrong shape");
    for (const auto& b : source.denominator().basis())
        if (!target.denominator().contains(ambient_map.apply(b)))
            throw std::invalid_argument("ambient map does not carry denominator into denominator");
    const size_t n = source.group().generator_count();
    IntMatrix m(target.group().generator_count(), n);
    for (size_t j = 0; j < n; ++j) {
        IntVector y = target.coordinates(ambient_map.apply(source.generator(j)));
        for (size_t i = 0; i < y.size(); ++i)
            m(i, j) = std::move(y[i]);
    }
    return GroupHom(source.group(), target.group(), std::move(m));
}

Subquotient subgroup(const FgAbGroup& g, const Lattice& lattice_with_relations)
{
    return Subquotient(lattice_with_relations, g.relations());
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Coefficients Coefficients::parse(std::string_view text)
{
    const std::string_view whole = trim(text);
    if (whole == "Q")
        return rationals();
    std::vector<Integer> orders;
    std::string_view rest = whole;
    for (;;) {
        const size_t plus = rest.find('+');
        const std::string_view part = trim(rest.substr(0, plus));
        if (part == "Z") {
            orders.push_back(0);
        } else if (part.starts_with("Z/") && all_digits(part.substr(2))) {
            Integer m = Integer::parse(part.substr(2));
            if (m < Integer(2))
                throw std::invalid_argument("coefficient modulus must be at least 2 in '" + std::string(whole) + "'");
            orders.push_back(std::move(m));
        } else if (part.starts_with("Z^") && all_digits(part.substr(2))) {
            size_t r = 0;
            const std::string_view digits = part.substr(2);
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), r);
            if (ec != std::errc() || r == 0)
                throw std::invalid_argument("bad free rank in coefficients '" + std::string(whole) + "'");
            orders.insert(orders.end(), r, Integer(0));
        } else if (part == "Q") {
            throw std::invalid_argument("Q cannot be summed with other coefficient groups");
        } else {
            throw std::invalid_argument("unsupported coefficient group '" + std::string(whole) + "'");
        }
        if (plus == std::string_view::npos)
            break;
        rest = rest.substr(plus + 1);
    }
    return {FgAbGroup::from_cyclic(orders), false};
}

std::vector<Integer> Coefficients::cyclic_orders() const
{
    return cyclic_list(group);
}

std::string Coefficients::render() const
{
    return rational ? "Q" : group.render();
}

std::string Coefficients::render_value(const FgAbGroup& value) const
{
    return rational ? value.render_rational() : value.render();
}

}  // namespace cechb
