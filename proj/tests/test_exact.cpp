#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <json.hpp>

#include "omega/errors.hpp"
#include "omega/exact.hpp"
#include "omega/json_io.hpp"
#include "oracles.hpp"

using namespace omega;

namespace {

ExactReal log2_int(long long n) { return ExactReal::log2_of(Int(n)); }

std::mt19937 rng(0x5eed);

Rational random_rational(int num_range = 50, int den_range = 12) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return Rational(num(rng), den(rng));
}

ExactReal random_quad(const Int& d) {
    return ExactReal::quad(random_rational(), random_rational(), d);
}

ExactReal random_loglin() {
    static const int primes[] = {2, 3, 5, 7, 11, 13};
    LogLin l;
    l.q0 = random_rational(9, 6);
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_int_distribution<int> pick(0, 5);
    const int k = count(rng);
    for (int i = 0; i < k; ++i) l.terms[Int(primes[pick(rng)])] = random_rational(9, 6);
    return ExactReal(std::move(l));
}

}  // namespace

TEST_CASE("comparison matches integer power oracles") {
    // log2(3) < 8/5 reduces to 3^5 vs 2^8.
    CHECK(pow_checked(3, 5) < pow_checked(2, 8));
    CHECK(compare(log2_int(3), ExactReal(Rational(8, 5))) < 0);

    CHECK(compare(ExactReal::phi(), ExactReal::phi()) == 0);

    // Twelve fifths overshoot 19 semitone steps.
    CHECK(compare(scalar_mul(12, log2_int(3)), ExactReal(19)) > 0);
    CHECK(compare(scalar_mul(12, log2_int(5)), ExactReal(28)) < 0);
}

TEST_CASE("addition and scalar multiplication") {
    CHECK(add(log2_int(3), log2_int(3)) == scalar_mul(2, log2_int(3)));
    CHECK(add(ExactReal::phi(), ExactReal(1)) == ExactReal::quad(Rational(3, 2), Rational(1, 2), 5));
    CHECK(sub(ExactReal::phi(), ExactReal::phi()).is_zero());
    CHECK(scalar_mul(0, log2_int(3)).is_zero());
}

TEST_CASE("floor via exact bracketing") {
    CHECK(ExactReal::phi().floor() == 1);

    // floor(12 log2 3 + 3/5) = 19 is equivalent to 2^92 <= 3^60 < 2^97.
    CHECK(pow_checked(2, 92) <= pow_checked(3, 60));
    CHECK(pow_checked(3, 60) < pow_checked(2, 97));
    CHECK(add(scalar_mul(12, log2_int(3)), ExactReal(Rational(3, 5))).floor() == 19);

    // The 13th harmonic: nearest rounding of 12 log2 13 lands on 44, the
    // offset floor must land on 45.
    CHECK(std::llround(12.0 * std::log2(13.0)) == 44);
    CHECK(add(scalar_mul(12, log2_int(13)), ExactReal(Rational(3, 5))).floor() == 45);

    CHECK(ExactReal(Rational(-7, 2)).floor() == -4);
}

TEST_CASE("decimal printing is correctly rounded") {
    CHECK(ExactReal::phi().to_decimal(4) == "1.6180");
    CHECK(ExactReal().to_decimal(4) == "0.0000");

    // "1.58496" pins 2^158496 <= 3^100000 < 2^158497 (plus the rounding
    // digit); check the bracket that justifies the last digit.
    CHECK(pow_checked(2, 158496) <= pow_checked(3, 100000));
    CHECK(pow_checked(3, 100000) < pow_checked(2, 158497));
    CHECK(log2_int(3).to_decimal(5) == "1.58496");

    CHECK(ExactReal(Rational(1, 8)).to_decimal(2) == "0.13");  // ties round up
}

TEST_CASE("trichotomy and transitivity on random triples per kind") {
    auto check_triple = [](const ExactReal& x, const ExactReal& y, const ExactReal& z) {
        const auto xy = compare(x, y);
        CHECK(compare(y, x) == (xy == std::strong_ordering::less    ? std::strong_ordering::greater
                                : xy == std::strong_ordering::greater ? std::strong_ordering::less
                                                                      : std::strong_ordering::equal));
        CHECK(compare(x, x) == 0);
        if (compare(x, y) <= 0 && compare(y, z) <= 0) CHECK(compare(x, z) <= 0);
    };
    for (int i = 0; i < 1000; ++i) {
        check_triple(ExactReal(random_rational()), ExactReal(random_rational()),
                     ExactReal(random_rational()));
        const Int d = (i % 2) ? 5 : 2;
        check_triple(random_quad(d), random_quad(d), random_quad(d));
        check_triple(random_loglin(), random_loglin(), random_loglin());
    }
}

TEST_CASE("translation invariance of compare") {
    for (int i = 0; i < 300; ++i) {
        const ExactReal x = random_loglin(), y = random_loglin(), z = random_loglin();
        CHECK(compare(add(x, z), add(y, z)) == compare(x, y));
        const ExactReal a = random_quad(5), b = random_quad(5), c = random_quad(5);
        CHECK(compare(add(a, c), add(b, c)) == compare(a, b));
    }
}

TEST_CASE("floor brackets its argument for every kind") {
    auto check_floor = [](const ExactReal& x) {
        const Int k = x.floor();
        CHECK(compare(ExactReal(Rational(k)), x) <= 0);
        CHECK(compare(x, ExactReal(Rational(k + 1))) < 0);
    };
    for (int i = 0; i < 400; ++i) {
        check_floor(ExactReal(random_rational()));
        check_floor(random_quad(5));
        check_floor(random_loglin());
    }
}

TEST_CASE("log-linear signs agree with 200-digit interval evaluation") {
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const ExactReal x = random_loglin();
        if (x.kind() != Kind::log_lin) continue;
        const auto value = oracles::loglin_bigfloat(x.log_lin());
        if (boost::multiprecision::abs(value) < 1e-150) continue;  // interval straddles zero
        ++checked;
        CHECK(x.sign() == (value > 0 ? 1 : -1));
    }
    CHECK(checked > 900);
}

TEST_CASE("canonicalization") {
    // Same value constructed twice is structurally equal.
    CHECK(ExactReal::quad(Rational(1, 2), Rational(1, 2), 5) == ExactReal::phi());
    // Square factors of the radicand fold into the coefficient.
    CHECK(ExactReal::quad(Rational(0), Rational(1), 8) == ExactReal::quad(Rational(0), Rational(2), 2));
    // A perfect-square radicand collapses to a rational.
    CHECK(ExactReal::quad(Rational(1), Rational(3), 4) == ExactReal(7));
    // b = 0 collapses.
    CHECK(ExactReal::quad(Rational(2, 3), Rational(0), 5).is_rational());
    // log2 of composites lands in prime coordinates; the prime 2 folds into
    // the rational part.
    CHECK(log2_int(9) == scalar_mul(2, log2_int(3)));
    CHECK(log2_int(2) == ExactReal(1));
    CHECK(log2_int(12) == add(ExactReal(2), log2_int(3)));
    CHECK(ExactReal::log2_of(Rational(3, 2)) == sub(log2_int(3), ExactReal(1)));
}

TEST_CASE("incomparable and invalid inputs are rejected") {
    CHECK_THROWS_AS((void)compare(ExactReal::phi(), log2_int(3)), IncomparableKindsError);
    CHECK_THROWS_AS((void)add(ExactReal::phi(), log2_int(3)), IncomparableKindsError);
    CHECK_THROWS_AS(
        (void)add(ExactReal::quad(0, 1, 2), ExactReal::quad(0, 1, 3)), IncomparableKindsError);
    LogLin bad;
    bad.terms[Int(6)] = Rational(1);
    CHECK_THROWS_AS(ExactReal{std::move(bad)}, UnsupportedValueError);
    CHECK_THROWS_AS(Rational(1, 0), UnsupportedValueError);
}

TEST_CASE("rational ratio extraction") {
    CHECK(*rational_ratio(ExactReal(Rational(3, 2)), ExactReal(Rational(5, 2))) == Rational(3, 5));
    CHECK(*rational_ratio(scalar_mul(Rational(3, 2), ExactReal::phi()), ExactReal::phi()) ==
          Rational(3, 2));
    CHECK(!rational_ratio(ExactReal(1), log2_int(3)).has_value());
    CHECK(!rational_ratio(add(ExactReal(1), log2_int(3)), log2_int(3)).has_value());
    CHECK(*rational_ratio(scalar_mul(Rational(7, 3), log2_int(3)), log2_int(3)) == Rational(7, 3));
}

TEST_CASE("json round trip is bit-exact") {
    std::vector<ExactReal> values = {ExactReal(), ExactReal(Rational(-22, 7)), ExactReal::phi(),
                                     log2_int(360), ExactReal::log2_of(Rational(3, 2))};
    for (int i = 0; i < 50; ++i) {
        values.push_back(ExactReal(random_rational()));
        values.push_back(random_quad(5));
        values.push_back(random_loglin());
    }
    for (const auto& v : values) {
        const auto text = to_json(v).dump();
        CHECK(exact_from_json(Json::parse(text)) == v);
    }
}

TEST_CASE("text form round trips through the parser") {
    std::vector<ExactReal> values = {ExactReal(Rational(19, 12)), ExactReal::phi(),
                                     add(scalar_mul(12, log2_int(3)), ExactReal(Rational(3, 5))),
                                     sub(scalar_mul(2, log2_int(3)), ExactReal(3))};
    for (int i = 0; i < 50; ++i) {
        values.push_back(ExactReal(random_rational()));
        values.push_back(random_quad(7));
        values.push_back(random_loglin());
    }
    for (const auto& v : values) CHECK(parse_exact(v.str()) == v);

    CHECK(parse_exact("phi") == ExactReal::phi());
    CHECK(parse_exact("2.75") == ExactReal(Rational(11, 4)));
    CHECK(parse_exact("1+log2(3)") == add(ExactReal(1), log2_int(3)));
    CHECK(parse_exact("3/2*sqrt(5)-1/2") == ExactReal::quad(Rational(-1, 2), Rational(3, 2), 5));
    CHECK_THROWS_AS(parse_exact("sqrt(-1)"), ParseError);
    CHECK_THROWS_AS(parse_exact(""), ParseError);
    CHECK_THROWS_AS(parse_exact("1 ++ 2"), ParseError);
}
