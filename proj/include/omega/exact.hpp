#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

// Exact arithmetic for the three number kinds the library works with:
// rationals, quadratic surds a + b*sqrt(d), and rational combinations of 1
// and base-2 logarithms of primes. Every ordering decision is made with
// arbitrary-precision integer arithmetic; floating point only ever seeds
// search ranges that are then verified exactly.
//
// All values are immutable after construction and safe to share across
// threads.

namespace omega {

using Int = boost::multiprecision::cpp_int;

Int pow_checked(const Int& base, const Int& exponent);
bool is_prime_u64(std::uint64_t n);

// Arbitrary-precision rational, always in lowest terms with positive
// denominator. Not constructible from floating point: decision paths must
// never see a rounded value.
class Rational {
public:
    Rational() = default;
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(long long n) : v_(n) {}
    Rational(unsigned n) : v_(n) {}
    Rational(unsigned long n) : v_(n) {}
    Rational(unsigned long long n) : v_(n) {}
    explicit Rational(Int n) : v_(std::move(n)) {}
    Rational(Int num, Int den);
    Rational(double) = delete;
    Rational(long double) = delete;

    // Accepts "a", "-a/b" and decimal literals like "2.75".
    static Rational parse(std::string_view text);

    Int numerator() const;
    Int denominator() const;
    bool is_zero() const { return v_ == 0; }
    bool is_integer() const;
    int sign() const;
    Int floor() const;
    Rational abs() const;
    double approx() const;
    std::string str() const;

    friend Rational operator+(const Rational& x, const Rational& y) { return Rational(x.v_ + y.v_); }
    friend Rational operator-(const Rational& x, const Rational& y) { return Rational(x.v_ - y.v_); }
    friend Rational operator*(const Rational& x, const Rational& y) { return Rational(x.v_ * y.v_); }
    friend Rational operator/(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x) { return Rational(-x.v_); }
    friend bool operator==(const Rational& x, const Rational& y) { return x.v_ == y.v_; }
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
        if (x.v_ < y.v_) return std::strong_ordering::less;
        if (x.v_ == y.v_) return std::strong_ordering::equal;
        return std::strong_ordering::greater;
    }

private:
    using Backend = boost::multiprecision::cpp_rational;
    explicit Rational(Backend v) : v_(std::move(v)) {}
    Backend v_ = 0;
};

// a + b*sqrt(d) with d square-free. A canonical ExactReal never holds a
// QuadSurd with b = 0 (it collapses to the rational variant).
struct QuadSurd {
    Rational a;
    Rational b;
    Int d;

    friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
        return x.a == y.a && x.b == y.b && x.d == y.d;
    }
};

// q0 + sum_p c_p * log2(p). Keys are primes (checked on construction),
// coefficients are nonzero. A canonical ExactReal never holds an empty map.
struct LogLin {
    Rational q0;
    std::map<Int, Rational> terms;

    friend bool operator==(const LogLin& x, const LogLin& y) {
        return x.q0 == y.q0 && x.terms == y.terms;
    }
};

enum class Kind { rational, quad_surd, log_lin };

class ExactReal {
public:
    ExactReal() : v_(Rational()) {}
    ExactReal(int n) : v_(Rational(n)) {}
    ExactReal(long long n) : v_(Rational(n)) {}
    ExactReal(unsigned long long n) : v_(Rational(n)) {}
    explicit ExactReal(Int n) : v_(Rational(std::move(n))) {}
    ExactReal(Rational q) : v_(std::move(q)) {}
    explicit ExactReal(QuadSurd s);   // canonicalizes: square factors of d folded, b=0 collapses
    explicit ExactReal(LogLin l);     // canonicalizes: zero terms dropped, keys checked prime
    ExactReal(double) = delete;

    static ExactReal quad(Rational a, Rational b, Int d) { return ExactReal(QuadSurd{std::move(a), std::move(b), std::move(d)}); }
    static ExactReal log2_of(const Int& n);       // n >= 1, factored into prime coordinates
    static ExactReal log2_of(const Rational& q);  // q > 0
    static ExactReal phi() { return quad(Rational(1, 2), Rational(1, 2), 5); }

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_rational() const { return kind() == Kind::rational; }
    const Rational& rational() const { return std::get<Rational>(v_); }
    const QuadSurd& quad_surd() const { return std::get<QuadSurd>(v_); }
    const LogLin& log_lin() const { return std::get<LogLin>(v_); }

    bool is_zero() const { return is_rational() && rational().is_zero(); }
    int sign() const;

    // Unique k with k <= x < k+1, decided by exact comparison only; a
    // floating-point estimate just seeds the bracketing search.
    Int floor() const;

    // Correctly rounded decimal expansion with `digits` fractional digits;
    // ties round toward +infinity (half-up for the nonnegative values the
    // library produces).
    std::string to_decimal(unsigned digits) const;

    std::string str() const;      // exact text form, parseable by parse_exact
    double approx() const;        // estimate only, never a decision

    friend bool operator==(const ExactReal& x, const ExactReal& y) { return x.v_ == y.v_; }

private:
    std::variant<Rational, QuadSurd, LogLin> v_;
};

// Exact total order on comparable kinds. Rational compares with everything;
// two surds must share d; a genuinely irrational surd against a genuinely
// irrational log-linear value throws IncomparableKindsError.
std::strong_ordering compare(const ExactReal& x, const ExactReal& y);

ExactReal add(const ExactReal& x, const ExactReal& y);
ExactReal sub(const ExactReal& x, const ExactReal& y);
ExactReal negate(const ExactReal& x);
ExactReal scalar_mul(const Rational& q, const ExactReal& x);

// Partial product: rational times anything, or two surds over the same d.
ExactReal mul(const ExactReal& x, const ExactReal& y);

// Partial quotient: defined whenever the result stays within the supported
// kinds (rational divisor; same-field surd divisor; log-linear divisor only
// when x is a rational multiple of y).
ExactReal div(const ExactReal& x, const ExactReal& y);

// x/y as an exact rational when it is one, std::nullopt otherwise (total
// for y != 0). This is the commensurability kernel.
std::optional<Rational> rational_ratio(const ExactReal& x, const ExactReal& y);

// Text form: integers, fractions a/b, decimals, phi, sqrt(n), log2(n) and
// log2(a/b), combined with +, - and * by rational coefficients.
ExactReal parse_exact(std::string_view text);

struct ExactLess {
    bool operator()(const ExactReal& x, const ExactReal& y) const { return compare(x, y) < 0; }
};

}  // namespace omega
