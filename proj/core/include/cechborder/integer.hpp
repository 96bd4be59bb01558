#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cechb {

// Exact integer with an int64 fast path. Values that leave the int64 range
// are promoted to a GMP integer; results that fit again are demoted, so two
// equal values always have the same representation.
class Integer {
public:
    Integer() = default;
    Integer(long long v) : small_(v) {}  // NOLINT(google-explicit-constructor)
    Integer(int v) : small_(v) {}        // NOLINT(google-explicit-constructor)
    Integer(long v) : small_(v) {}       // NOLINT(google-explicit-constructor)
    Integer(unsigned long v);            // NOLINT(google-explicit-constructor)
    Integer(unsigned long long v);       // NOLINT(google-explicit-constructor)
    explicit Integer(const mpz_class& z) { assign(z); }

    // Parses an optionally signed decimal string; throws std::invalid_argument.
    static Integer parse(std::string_view text);

    Integer(const Integer& other);
    Integer& operator=(const Integer& other);
    Integer(Integer&&) noexcept = default;
    Integer& operator=(Integer&&) noexcept = default;
    ~Integer() = default;

    bool is_small() const noexcept { return !big_; }
    bool is_zero() const noexcept { return !big_ && small_ == 0; }
    bool is_one() const noexcept { return !big_ && small_ == 1; }
    int sign() const noexcept;

    // Only valid when is_small().
    long long small_value() const noexcept { return small_; }
    bool fits_int64() const noexcept { return !big_; }
    mpz_class to_mpz() const;
    std::string to_string() const;

    Integer abs() const;
    Integer operator-() const;

    Integer& operator+=(const Integer& rhs);
    Integer& operator-=(const Integer& rhs);
    Integer& operator*=(const Integer& rhs);

    // Truncating division (C semantics); throws std::domain_error on zero.
    Integer& operator/=(const Integer& rhs);
    Integer& operator%=(const Integer& rhs);

    // this -= q * rhs, the workhorse of every elimination loop.
    void submul(const Integer& q, const Integer& rhs);
    void addmul(const Integer& q, const Integer& rhs);

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
    friend Integer operator/(Integer a, const Integer& b) { return a /= b; }
    friend Integer operator%(Integer a, const Integer& b) { return a %= b; }

    friend bool operator==(const Integer& a, const Integer& b) noexcept;
    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept;

    // Compares |a| with |b|.
    static int compare_abs(const Integer& a, const Integer& b) noexcept;

    friend std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

private:
    void assign(const mpz_class& z);
    void normalize();
    mpz_class& ensure_big();

    long long small_ = 0;
    std::unique_ptr<mpz_class> big_;
};

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
// Extended gcd: returns g >= 0 with g = s*a + t*b.
Integer xgcd(const Integer& a, const Integer& b, Integer& s, Integer& t);
// Floor division and the matching nonnegative residue for positive m.
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& m);
bool divides(const Integer& d, const Integer& a);

}  // namespace cechb
