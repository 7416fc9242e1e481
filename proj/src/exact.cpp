#include "omega/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "omega/errors.hpp"

namespace omega {

namespace {

// Budget for the integer products built while deciding log-linear signs.
// 2^25 bits is ~4 MB per operand, far beyond anything the library's domains
// need; hitting it signals a degenerate input, not a real computation.
constexpr std::uint64_t kMaxPowerBits = 1u << 25;

Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

std::uint64_t to_u64_checked(const Int& n, const char* what) {
    if (n < 0 || n > std::numeric_limits<std::uint64_t>::max()) {
        throw UnsupportedValueError(std::string(what) + " does not fit in 64 bits");
    }
    return n.convert_to<std::uint64_t>();
}

unsigned msb_or_zero(const Int& n) {
    return n == 0 ? 0 : boost::multiprecision::msb(n);
}

}  // namespace

Int pow_checked(const Int& base, const Int& exponent) {
    if (exponent < 0) throw UnsupportedValueError("negative exponent");
    if (base == 0) return exponent == 0 ? Int(1) : Int(0);
    const std::uint64_t e = to_u64_checked(exponent, "exponent");
    const std::uint64_t bits = (std::uint64_t(msb_or_zero(base)) + 1) * e;
    if (bits > kMaxPowerBits) {
        throw UnsupportedValueError("integer power exceeds the exact-comparison budget");
    }
    if (e > std::numeric_limits<unsigned>::max()) {
        throw UnsupportedValueError("exponent exceeds the exact-comparison budget");
    }
    return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

// Deterministic Miller-Rabin, valid for every n < 2^64.
bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
        return static_cast<std::uint64_t>((__uint128_t)a * b % n);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) -> std::uint64_t {
        std::uint64_t acc = 1;
        while (e) {
            if (e & 1) acc = mulmod(acc, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return acc;
    };
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a % n, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; n > 1 && p <= n / p; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(Int num, Int den) {
    if (den == 0) throw UnsupportedValueError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    v_ = Backend(std::move(num), std::move(den));
}

Int Rational::numerator() const { return boost::multiprecision::numerator(v_); }
Int Rational::denominator() const { return boost::multiprecision::denominator(v_); }
bool Rational::is_integer() const { return denominator() == 1; }

int Rational::sign() const {
    if (v_ == 0) return 0;
    return v_ < 0 ? -1 : 1;
}

Int Rational::floor() const {
    Int n = numerator(), d = denominator();
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

double Rational::approx() const { return v_.convert_to<double>(); }

std::string Rational::str() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
}

Rational operator/(const Rational& x, const Rational& y) {
    if (y.v_ == 0) throw UnsupportedValueError("division by zero");
    return Rational(Rational::Backend(x.v_ / y.v_));
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw ParseError("empty rational literal");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    auto digits = [&](std::size_t& pos) {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("bad rational literal: " + std::string(text));
        return s.substr(start, pos - start);
    };
    std::string ip = digits(i);
    Int num(ip), den(1);
    if (i < s.size() && s[i] == '/') {
        ++i;
        Int d(digits(i));
        if (d == 0) throw ParseError("zero denominator: " + std::string(text));
        den = d;
    } else if (i < s.size() && s[i] == '.') {
        ++i;
        std::string fp = digits(i);
        for (char c : fp) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
    }
    if (i != s.size()) throw ParseError("trailing characters in rational literal: " + std::string(text));
    if (neg) num = -num;
    return Rational(std::move(num), std::move(den));
}

// ---------------------------------------------------------------------------
// ExactReal construction / canonicalization

ExactReal::ExactReal(QuadSurd s) : v_(Rational()) {
    if (s.d <= 0) throw UnsupportedValueError("radicand must be positive");
    if (s.b.is_zero()) {
        v_ = std::move(s.a);
        return;
    }
    // Fold square factors of d into b so that d is square-free.
    std::uint64_t d = to_u64_checked(s.d, "radicand");
    Int square_part = 1, free_part = 1;
    for (auto [p, e] : factor_u64(d)) {
        if (e / 2 > 0) square_part *= pow_checked(Int(p), Int(e / 2));
        if (e % 2 == 1) free_part *= p;
    }
    if (square_part != 1) s.b = s.b * Rational(square_part);
    if (free_part == 1) {
        v_ = s.a + s.b;  // sqrt(d) was an integer
        return;
    }
    s.d = free_part;
    v_ = std::move(s);
}

ExactReal::ExactReal(LogLin l) : v_(Rational()) {
    // log2(2) = 1 exactly, so the prime-2 coordinate folds into q0; keys are
    // odd primes afterwards. Zero coefficients are dropped.
    if (auto it = l.terms.find(Int(2)); it != l.terms.end()) {
        l.q0 = l.q0 + it->second;
        l.terms.erase(it);
    }
    for (auto it = l.terms.begin(); it != l.terms.end();) {
        if (it->second.is_zero()) {
            it = l.terms.erase(it);
        } else {
            if (it->first < 2 || !is_prime_u64(to_u64_checked(it->first, "log2 key"))) {
                throw UnsupportedValueError("log2 coordinate key " + it->first.str() + " is not prime");
            }
            ++it;
        }
    }
    if (l.terms.empty()) {
        v_ = std::move(l.q0);
        return;
    }
    v_ = std::move(l);
}

ExactReal ExactReal::log2_of(const Int& n) {
    if (n < 1) throw UnsupportedValueError("log2 of a nonpositive integer");
    LogLin l;
    for (auto [p, e] : factor_u64(to_u64_checked(n, "log2 argument"))) {
        l.terms[Int(p)] = Rational(static_cast<long long>(e));
    }
    return ExactReal(std::move(l));
}

ExactReal ExactReal::log2_of(const Rational& q) {
    if (q.sign() <= 0) throw UnsupportedValueError("log2 of a nonpositive rational");
    return sub(log2_of(q.numerator()), log2_of(q.denominator()));
}

// ---------------------------------------------------------------------------
// Signs

namespace {

int sign_quad(const QuadSurd& s) {
    const int sa = s.a.sign();
    const int sb = s.b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |a| vs |b|sqrt(d) decided by squaring. Equality is
    // impossible for square-free d >= 2.
    const Rational a2 = s.a * s.a;
    const Rational b2d = s.b * s.b * Rational(s.d);
    return a2 > b2d ? sa : sb;
}

// sign(c0 + sum c_p log2 p) after clearing denominators reduces to comparing
//   2^max(c0,0) * prod_{c_p>0} p^{c_p}   vs   2^max(-c0,0) * prod_{c_p<0} p^{-c_p}
// as arbitrary-precision integers; unique factorization makes this exact.
int sign_loglin(const LogLin& l) {
    Int mult = l.q0.denominator();
    for (const auto& [p, c] : l.terms) mult = lcm_int(mult, c.denominator());

    Int lhs = 1, rhs = 1;
    const Int c0 = l.q0.numerator() * (mult / l.q0.denominator());
    if (c0 > 0) {
        lhs *= pow_checked(2, c0);
    } else if (c0 < 0) {
        rhs *= pow_checked(2, -c0);
    }
    for (const auto& [p, c] : l.terms) {
        const Int cp = c.numerator() * (mult / c.denominator());
        if (cp > 0) {
            lhs *= pow_checked(p, cp);
        } else {
            rhs *= pow_checked(p, -cp);
        }
    }
    if (lhs == rhs) return 0;
    return lhs > rhs ? 1 : -1;
}

}  // namespace

int ExactReal::sign() const {
    switch (kind()) {
        case Kind::rational: return rational().sign();
        case Kind::quad_surd: return sign_quad(quad_surd());
        case Kind::log_lin: return sign_loglin(log_lin());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Arithmetic

ExactReal add(const ExactReal& x, const ExactReal& y) {
    if (x.is_rational() && y.is_rational()) return ExactReal(x.rational() + y.rational());
    if (x.is_rational()) return add(y, x);
    // x irrational from here on.
    if (x.kind() == Kind::quad_surd) {
        const QuadSurd& s = x.quad_surd();
        if (y.is_rational()) return ExactReal(QuadSurd{s.a + y.rational(), s.b, s.d});
        if (y.kind() == Kind::quad_surd) {
            const QuadSurd& t = y.quad_surd();
            if (s.d != t.d) {
                throw IncomparableKindsError("surds over sqrt(" + s.d.str() + ") and sqrt(" + t.d.str() + ")");
            }
            return ExactReal(QuadSurd{s.a + t.a, s.b + t.b, s.d});
        }
        throw IncomparableKindsError("quadratic surd combined with a log-linear value");
    }
    const LogLin& l = x.log_lin();
    if (y.is_rational()) {
        LogLin out = l;
        out.q0 = out.q0 + y.rational();
        return ExactReal(std::move(out));
    }
    if (y.kind() == Kind::log_lin) {
        LogLin out = l;
        out.q0 = out.q0 + y.log_lin().q0;
        for (const auto& [p, c] : y.log_lin().terms) {
            auto it = out.terms.find(p);
            if (it == out.terms.end()) {
                out.terms.emplace(p, c);
            } else {
                it->second = it->second + c;
            }
        }
        return ExactReal(std::move(out));
    }
    throw IncomparableKindsError("log-linear value combined with a quadratic surd");
}

ExactReal negate(const ExactReal& x) { return scalar_mul(Rational(-1), x); }

ExactReal sub(const ExactReal& x, const ExactReal& y) { return add(x, negate(y)); }

ExactReal scalar_mul(const Rational& q, const ExactReal& x) {
    if (q.is_zero()) return ExactReal();
    switch (x.kind()) {
        case Kind::rational: return ExactReal(q * x.rational());
        case Kind::quad_surd: {
            const QuadSurd& s = x.quad_surd();
            return ExactReal(QuadSurd{q * s.a, q * s.b, s.d});
        }
        case Kind::log_lin: {
            LogLin out = x.log_lin();
            out.q0 = q * out.q0;
            for (auto& [p, c] : out.terms) c = q * c;
            return ExactReal(std::move(out));
        }
    }
    return ExactReal();
}

ExactReal mul(const ExactReal& x, const ExactReal& y) {
    if (x.is_rational()) return scalar_mul(x.rational(), y);
    if (y.is_rational()) return scalar_mul(y.rational(), x);
    if (x.kind() == Kind::quad_surd && y.kind() == Kind::quad_surd) {
        const QuadSurd& s = x.quad_surd();
        const QuadSurd& t = y.quad_surd();
        if (s.d != t.d) {
            throw IncomparableKindsError("product of surds over different radicands");
        }
        const Rational dr(s.d);
        return ExactReal(QuadSurd{s.a * t.a + s.b * t.b * dr, s.a * t.b + s.b * t.a, s.d});
    }
    throw UnsupportedValueError("product leaves the supported representations");
}

ExactReal div(const ExactReal& x, const ExactReal& y) {
    if (y.is_zero()) throw UnsupportedValueError("division by zero");
    if (y.is_rational()) return scalar_mul(Rational(1) / y.rational(), x);
    if (y.kind() == Kind::quad_surd) {
        const QuadSurd& t = y.quad_surd();
        if (!(x.is_rational() || (x.kind() == Kind::quad_surd && x.quad_surd().d == t.d))) {
            throw IncomparableKindsError("quotient leaves the quadratic field");
        }
        // x / (a + b sqrt d) = x (a - b sqrt d) / (a^2 - b^2 d)
        const Rational norm = t.a * t.a - t.b * t.b * Rational(t.d);
        return scalar_mul(Rational(1) / norm, mul(x, ExactReal::quad(t.a, -t.b, t.d)));
    }
    auto r = rational_ratio(x, y);
    if (!r) throw IncomparableKindsError("quotient by a log-linear value is not representable");
    return ExactReal(*r);
}

std::optional<Rational> rational_ratio(const ExactReal& x, const ExactReal& y) {
    if (y.is_zero()) throw UnsupportedValueError("ratio with zero divisor");
    if (x.is_zero()) return Rational(0);
    if (x.is_rational() && y.is_rational()) return x.rational() / y.rational();
    if (x.kind() != y.kind()) return std::nullopt;  // canonical irrationals never equal a rational multiple across kinds
    if (x.kind() == Kind::quad_surd) {
        const QuadSurd& s = x.quad_surd();
        const QuadSurd& t = y.quad_surd();
        if (s.d != t.d) return std::nullopt;
        if (!(s.a * t.b == t.a * s.b)) return std::nullopt;
        return s.b / t.b;
    }
    const LogLin& l = x.log_lin();
    const LogLin& m = y.log_lin();
    // Proportionality of full coordinate vectors (q0 and every prime).
    Rational r;
    bool have_r = false;
    auto propose = [&](const Rational& num, const Rational& den) {
        if (den.is_zero()) {
            return num.is_zero();
        }
        Rational cand = num / den;
        if (!have_r) {
            r = cand;
            have_r = true;
            return true;
        }
        return cand == r;
    };
    if (!propose(l.q0, m.q0)) return std::nullopt;
    auto coeff = [](const LogLin& v, const Int& p) {
        auto it = v.terms.find(p);
        return it == v.terms.end() ? Rational(0) : it->second;
    };
    for (const auto& [p, c] : m.terms) {
        if (!propose(coeff(l, p), c)) return std::nullopt;
    }
    for (const auto& [p, c] : l.terms) {
        if (!propose(c, coeff(m, p))) return std::nullopt;
    }
    if (!have_r) return std::nullopt;
    return r;
}

std::strong_ordering compare(const ExactReal& x, const ExactReal& y) {
    if (x.is_rational() && y.is_rational()) return x.rational() <=> y.rational();
    const int s = sub(x, y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Floor and decimal printing

namespace {

std::strong_ordering compare_with_int(const ExactReal& x, const Int& k) {
    return compare(x, ExactReal(Rational(k)));
}

}  // namespace

Int ExactReal::floor() const {
    if (is_rational()) return rational().floor();
    const double est = approx();
    Int k = 0;
    if (std::isfinite(est) && std::abs(est) < 9e15) {
        k = Int(static_cast<long long>(std::floor(est)));
    }
    // Establish k <= x by galloping downward, then an upper bound, then
    // bisect. The estimate only affects the number of exact comparisons.
    Int step = 1;
    while (compare_with_int(*this, k) < 0) {
        k -= step;
        step <<= 1;
    }
    Int hi = k + 1;
    step = 1;
    while (compare_with_int(*this, hi) >= 0) {
        hi += step;
        step <<= 1;
    }
    while (hi - k > 1) {
        Int mid = k + (hi - k) / 2;
        if (compare_with_int(*this, mid) >= 0) {
            k = mid;
        } else {
            hi = mid;
        }
    }
    return k;
}

std::string ExactReal::to_decimal(unsigned digits) const {
    const Int scale = pow_checked(10, Int(digits));
    const ExactReal scaled = add(scalar_mul(Rational(scale), *this), ExactReal(Rational(1, 2)));
    Int v = scaled.floor();
    const bool neg = v < 0;
    if (neg) v = -v;
    const Int ip = v / scale;
    std::string frac = Int(v % scale).str();
    if (frac.size() < digits) frac.insert(0, digits - frac.size(), '0');
    std::string out = (neg ? "-" : "") + ip.str();
    if (digits > 0) out += "." + frac;
    return out;
}

double ExactReal::approx() const {
    switch (kind()) {
        case Kind::rational: return rational().approx();
        case Kind::quad_surd: {
            const QuadSurd& s = quad_surd();
            return s.a.approx() + s.b.approx() * std::sqrt(s.d.convert_to<double>());
        }
        case Kind::log_lin: {
            const LogLin& l = log_lin();
            double acc = l.q0.approx();
            for (const auto& [p, c] : l.terms) acc += c.approx() * std::log2(p.convert_to<double>());
            return acc;
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

void append_signed(std::string& out, const Rational& coeff, const std::string& atom) {
    const Rational a = coeff.abs();
    if (!out.empty()) out += coeff.sign() < 0 ? "-" : "+";
    else if (coeff.sign() < 0) out += "-";
    if (atom.empty()) {
        out += a.str();
        return;
    }
    if (a == Rational(1)) {
        out += atom;
    } else {
        out += a.str() + "*" + atom;
    }
}

}  // namespace

std::string ExactReal::str() const {
    switch (kind()) {
        case Kind::rational: return rational().str();
        case Kind::quad_surd: {
            const QuadSurd& s = quad_surd();
            std::string out;
            if (!s.a.is_zero()) append_signed(out, s.a, "");
            append_signed(out, s.b, "sqrt(" + s.d.str() + ")");
            return out;
        }
        case Kind::log_lin: {
            const LogLin& l = log_lin();
            std::string out;
            for (const auto& [p, c] : l.terms) append_signed(out, c, "log2(" + p.str() + ")");
            if (!l.q0.is_zero()) append_signed(out, l.q0, "");
            return out;
        }
    }
    return "0";
}

// ---------------------------------------------------------------------------
// Parser for the generator mini-grammar

namespace {

struct Cursor {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat_word(std::string_view w) {
        skip_ws();
        if (s.substr(i, w.size()) == w) {
            i += w.size();
            return true;
        }
        return false;
    }
    bool done() {
        skip_ws();
        return i == s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
};

Rational parse_number(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.i;
    while (c.i < c.s.size() &&
           (std::isdigit(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '.' || c.s[c.i] == '/')) {
        // A '/' only belongs to the number if followed by a digit (fractions).
        if (c.s[c.i] == '/' &&
            !(c.i + 1 < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i + 1])))) {
            break;
        }
        ++c.i;
    }
    if (c.i == start) throw ParseError("expected a number at '" + std::string(c.s.substr(c.i)) + "'");
    return Rational::parse(c.s.substr(start, c.i - start));
}

ExactReal parse_factor(Cursor& c) {
    if (c.eat_word("phi")) return ExactReal::phi();
    if (c.eat_word("sqrt")) {
        if (!c.eat('(')) throw ParseError("expected '(' after sqrt");
        Rational q = parse_number(c);
        if (!c.eat(')')) throw ParseError("expected ')' after sqrt argument");
        if (q.sign() < 0) throw ParseError("sqrt of a negative value");
        // sqrt(a/b) = sqrt(ab)/b
        return ExactReal::quad(Rational(0), Rational(1, q.denominator()), q.numerator() * q.denominator());
    }
    if (c.eat_word("log2")) {
        if (!c.eat('(')) throw ParseError("expected '(' after log2");
        Rational q = parse_number(c);
        if (!c.eat(')')) throw ParseError("expected ')' after log2 argument");
        if (q.sign() <= 0) throw ParseError("log2 of a nonpositive value");
        return ExactReal::log2_of(q);
    }
    return ExactReal(parse_number(c));
}

ExactReal parse_term(Cursor& c) {
    ExactReal acc = parse_factor(c);
    while (c.eat('*')) acc = mul(acc, parse_factor(c));
    return acc;
}

}  // namespace

ExactReal parse_exact(std::string_view text) {
    Cursor c{text};
    if (c.done()) throw ParseError("empty expression");
    bool neg = false;
    if (c.eat('-')) neg = true;
    else c.eat('+');
    ExactReal acc = parse_term(c);
    if (neg) acc = negate(acc);
    while (!c.done()) {
        if (c.eat('+')) {
            acc = add(acc, parse_term(c));
        } else if (c.eat('-')) {
            acc = sub(acc, parse_term(c));
        } else {
            throw ParseError("unexpected character at '" + std::string(text.substr(c.i)) + "'");
        }
    }
    return acc;
}

}  // namespace omega
