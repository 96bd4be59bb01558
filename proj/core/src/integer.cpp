#include "cechborder/integer.hpp"

#include <limits>
#include <stdexcept>

namespace cechb {

namespace {

mpz_class from_ll(long long v)
{
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
}

}  // namespace

Integer::Integer(unsigned long v)
{
    if (v <= static_cast<unsigned long>(std::numeric_limits<long long>::max()))
        small_ = static_cast<long long>(v);
    else
        big_ = std::make_unique<mpz_class>(v);
}

Integer::Integer(unsigned long long v) : Integer(static_cast<unsigned long>(v)) {}

Integer Integer::parse(std::string_view text)
{
    if (text.empty())
        throw std::invalid_argument("empty integer literal");
    std::string s(text);
    size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size())
        throw std::invalid_argument("malformed integer literal '" + s + "'");
    for (size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("malformed integer literal '" + s + "'");
    if (s[0] == '+')
        s.erase(0, 1);
    return Integer(mpz_class(s, 10));
}

Integer::Integer(const Integer& other) : small_(other.small_)
{
    if (other.big_)
        big_ = std::make_unique<mpz_class>(*other.big_);
}

Integer& Integer::operator=(const Integer& other)
{
    if (this == &other)
        return *this;
    small_ = other.small_;
    if (other.big_) {
        if (big_)
            *big_ = *other.big_;
        else
            big_ = std::make_unique<mpz_class>(*other.big_);
    } else {
        big_.reset();
    }
    return *this;
}

void Integer::assign(const mpz_class& z)
{
    if (mpz_fits_slong_p(z.get_mpz_t())) {
        small_ = mpz_get_si(z.get_mpz_t());
        big_.reset();
    } else {
        if (big_)
            *big_ = z;
        else
            big_ = std::make_unique<mpz_class>(z);
        small_ = 0;
    }
}

void Integer::normalize()
{
    if (big_ && mpz_fits_slong_p(big_->get_mpz_t())) {
        small_ = mpz_get_si(big_->get_mpz_t());
        big_.reset();
    }
}

mpz_class& Integer::ensure_big()
{
    if (!big_) {
        big_ = std::make_unique<mpz_class>(from_ll(small_));
        small_ = 0;
    }
    return *big_;
}

int Integer::sign() const noexcept
{
    if (big_)
        return sgn(*big_);
    return (small_ > 0) - (small_ < 0);
}

mpz_class Integer::to_mpz() const
{
    return big_ ? *big_ : from_ll(small_);
}

std::string Integer::to_string() const
{
    return big_ ? big_->get_str() : std::to_string(small_);
}

Integer Integer::abs() const
{
    return sign() < 0 ? -*this : *this;
}

Integer Integer::operator-() const
{
    if (!big_ && small_ != std::numeric_limits<long long>::min())
        return Integer(-small_);
    mpz_class z = -to_mpz();
    return Integer(z);
}

Integer& Integer::operator+=(const Integer& rhs)
{
    if (!big_ && !rhs.big_) {
        long long r;
        if (!__builtin_add_overflow(small_, rhs.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    mpz_class& z = ensure_big();
    z += rhs.to_mpz();
    normalize();
    return *this;
}

Integer& Integer::operator-=(const Integer& rhs)
{
    if (!big_ && !rhs.big_) {
        long long r;
        if (!__builtin_sub_overflow(small_, rhs.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    mpz_class& z = ensure_big();
    z -= rhs.to_mpz();
    normalize();
    return *this;
}

Integer& Integer::operator*=(const Integer& rhs)
{
    if (!big_ && !rhs.big_) {
        long long r;
        if (!__builtin_mul_overflow(small_, rhs.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    mpz_class& z = ensure_big();
    z *= rhs.to_mpz();
    normalize();
    return *this;
}

Integer& Integer::operator/=(const Integer& rhs)
{
    if (rhs.is_zero())
        throw std::domain_error("integer division by zero");
    if (!big_ && !rhs.big_ && !(small_ == std::numeric_limits<long long>::min() && rhs.small_ == -1)) {
        small_ /= rhs.small_;
        return *this;
    }
    mpz_class& z = ensure_big();
    mpz_tdiv_q(z.get_mpz_t(), z.get_mpz_t(), rhs.to_mpz().get_mpz_t());
    normalize();
    return *this;
}

Integer& Integer::operator%=(const Integer& rhs)
{
    if (rhs.is_zero())
        throw std::domain_error("integer division by zero");
    if (!big_ && !rhs.big_) {
        if (rhs.small_ == -1)
            small_ = 0;
        else
            small_ %= rhs.small_;
        return *this;
    }
    mpz_class& z = ensure_big();
    mpz_tdiv_r(z.get_mpz_t(), z.get_mpz_t(), rhs.to_mpz().get_mpz_t());
    normalize();
    return *this;
}

void Integer::submul(const Integer& q, const Integer& rhs)
{
    if (q.is_zero() || rhs.is_zero())
        return;
    if (!big_ && !q.big_ && !rhs.big_) {
        long long p, r;
        if (!__builtin_mul_overflow(q.small_, rhs.small_, &p) && !__builtin_sub_overflow(small_, p, &r)) {
            small_ = r;
            return;
        }
    }
    mpz_class& z = ensure_big();
    mpz_submul(z.get_mpz_t(), q.to_mpz().get_mpz_t(), rhs.to_mpz().get_mpz_t());
    normalize();
}

void Integer::addmul(const Integer& q, const Integer& rhs)
{
    if (q.is_zero() || rhs.is_zero())
        return;
    if (!big_ && !q.big_ && !rhs.big_) {
        long long p, r;
        if (!__builtin_mul_overflow(q.small_, rhs.small_, &p) && !__builtin_add_overflow(small_, p, &r)) {
            small_ = r;
            return;
        }
    }
    mpz_class& z = ensure_big();
    mpz_addmul(z.get_mpz_t(), q.to_mpz().get_mpz_t(), rhs.to_mpz().get_mpz_t());
    normalize();
}

bool operator==(const Integer& a, const Integer& b) noexcept
{
    if (!a.big_ && !b.big_)
        return a.small_ == b.small_;
    if (a.big_ && b.big_)
        return *a.big_ == *b.big_;
    return false;  // normalized: a big value never equals a small one
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept
{
    if (!a.big_ && !b.big_)
        return a.small_ <=> b.small_;
    int c = cmp(a.to_mpz(), b.to_mpz());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

int Integer::compare_abs(const Integer& a, const Integer& b) noexcept
{
    if (!a.big_ && !b.big_) {
        unsigned long long x = a.small_ < 0 ? 0ULL - static_cast<unsigned long long>(a.small_)
                                            : static_cast<unsigned long long>(a.small_);
        unsigned long long y = b.small_ < 0 ? 0ULL - static_cast<unsigned long long>(b.small_)
                                            : static_cast<unsigned long long>(b.small_);
        return (x > y) - (x < y);
    }
    int c = mpz_cmpabs(a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return (c > 0) - (c < 0);
}

Integer gcd(const Integer& a, const Integer& b)
{
    if (a.is_small() && b.is_small() && a.small_value() != std::numeric_limits<long long>::min() &&
        b.small_value() != std::numeric_limits<long long>::min()) {
        long long x = a.small_value() < 0 ? -a.small_value() : a.small_value();
        long long y = b.small_value() < 0 ? -b.small_value() : b.small_value();
        while (y != 0) {
            long long t = x % y;
            x = y;
            y = t;
        }
        return Integer(x);
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Integer(g);
}

Integer lcm(const Integer& a, const Integer& b)
{
    if (a.is_zero() || b.is_zero())
        return Integer(0);
    return (a / gcd(a, b) * b).abs();
}

Integer xgcd(const Integer& a, const Integer& b, Integer& s, Integer& t)
{
    mpz_class g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    s = Integer(x);
    t = Integer(y);
    return Integer(g);
}

Integer floor_div(const Integer& a, const Integer& b)
{
    if (b.is_zero())
        throw std::domain_error("integer division by zero");
    Integer q = a / b;
    Integer r = a - q * b;
    if (!r.is_zero() && ((r.sign() < 0) != (b.sign() < 0)))
        q -= 1;
    return q;
}

Integer mod_floor(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r.sign() < 0)
        r += m.abs();
    return r;
}

bool divides(const Integer& d, const Integer& a)
{
    if (d.is_zero())
        return a.is_zero();
    return (a % d).is_zero();
}

}  // namespace cechb
