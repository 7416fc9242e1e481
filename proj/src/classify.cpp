#include "omega/classify.hpp"

#include <algorithm>
#include <limits>

#include "omega/errors.hpp"

namespace omega {

bool commensurable_pair(const ExactReal& x, const ExactReal& y) {
    if (x.sign() <= 0 || y.sign() <= 0) {
        throw UnsupportedValueError("commensurability is defined for positive values");
    }
    return rational_ratio(x, y).has_value();
}

Classification classify(const std::vector<ExactReal>& generators) {
    if (generators.empty()) throw UnsupportedValueError("empty generator list");
    for (const auto& g : generators) {
        if (g.sign() <= 0) throw UnsupportedValueError("generators must be positive");
    }
    for (std::size_t i = 0; i < generators.size(); ++i) {
        for (std::size_t j = i + 1; j < generators.size(); ++j) {
            if (!commensurable_pair(generators[i], generators[j])) {
                return TemperedClassification{generators[i], generators[j], "incommensurable-pair"};
            }
        }
    }

    // All ratios g_i / g_1 are rational. Scaling by the lcm of their
    // denominators over g_1 lands every generator on an integer, and the
    // lcm keeps those integers as small as possible.
    const ExactReal& g1 = generators.front();
    std::vector<Rational> ratios;
    Int denominator_lcm = 1;
    for (const auto& g : generators) {
        const auto r = rational_ratio(g, g1);
        ratios.push_back(*r);
        denominator_lcm = boost::multiprecision::lcm(denominator_lcm, r->denominator());
    }
    std::vector<Int> scaled;
    Int d = 0;
    for (const auto& r : ratios) {
        Int n = r.numerator() * (denominator_lcm / r.denominator());
        d = boost::multiprecision::gcd(d, n);
        scaled.push_back(std::move(n));
    }
    std::vector<std::uint64_t> integer_gens;
    for (const auto& n : scaled) {
        const Int reduced = n / d;
        if (reduced > std::numeric_limits<std::uint64_t>::max()) {
            throw BoundTooLargeError("rescaled generator exceeds 64 bits");
        }
        integer_gens.push_back(reduced.convert_to<std::uint64_t>());
    }
    // lambda = d * g1 / lcm, so lambda * (n_i / d) = g_i exactly.
    ExactReal lambda = scalar_mul(Rational(d, denominator_lcm), g1);
    return ScaledClassification{std::move(lambda),
                                NumericalSemigroup::from_generators(std::move(integer_gens))};
}

namespace {

bool verify_scaled(const std::vector<ExactReal>& generators, const ScaledClassification& c,
                   const ExactReal& bound, const EnumerateOptions& options) {
    const ElementList actual = enumerate(MonoidDescriptor::finite(generators), bound, options);
    std::vector<ExactReal> expected;
    for (std::uint64_t k = 0;; ++k) {
        if (!c.semigroup.contains(k)) continue;
        ExactReal v = scalar_mul(Rational(k), c.lambda);
        if (compare(v, bound) > 0) break;
        expected.push_back(std::move(v));
        if (expected.size() > actual.elements.size()) return false;
    }
    if (expected.size() != actual.elements.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (!(compare(expected[i], actual.elements[i]) == 0)) return false;
    }
    return true;
}

bool verify_tempered(const std::vector<ExactReal>& generators, const TemperedClassification& c,
                     const ExactReal& bound, const EnumerateOptions& options) {
    if (commensurable_pair(c.witness_a, c.witness_b)) return false;

    const ElementList el = enumerate(MonoidDescriptor::finite(generators), bound, options);
    const Footprint fp = footprint(el);

    // The footprint must itself contain an incommensurable pair.
    bool incommensurable_footprint = false;
    for (std::size_t i = 0; i < fp.values.size() && !incommensurable_footprint; ++i) {
        if (fp.values[i].sign() <= 0) continue;
        for (std::size_t j = i + 1; j < fp.values.size(); ++j) {
            if (!commensurable_pair(fp.values[i], fp.values[j])) {
                incommensurable_footprint = true;
                break;
            }
        }
    }
    if (!incommensurable_footprint) return false;

    // Consecutive gaps must shrink: the largest gap over the top half of the
    // range stays strictly below the largest gap over the bottom half. A
    // prefix signal only; condition (iii) is a limit statement.
    const ExactReal half = scalar_mul(Rational(1, 2), bound);
    ExactReal max_low, max_high;
    bool have_low = false, have_high = false;
    for (std::size_t i = 0; i + 1 < el.elements.size(); ++i) {
        const ExactReal& a = el.elements[i];
        const ExactReal& b = el.elements[i + 1];
        const ExactReal gap = sub(b, a);
        if (compare(b, half) <= 0) {
            if (!have_low || compare(gap, max_low) > 0) max_low = gap;
            have_low = true;
        } else if (compare(a, half) >= 0) {
            if (!have_high || compare(gap, max_high) > 0) max_high = gap;
            have_high = true;
        }
    }
    return have_low && have_high && compare(max_high, max_low) < 0;
}

}  // namespace

bool verify_classification(const std::vector<ExactReal>& generators, const Classification& c,
                           const ExactReal& bound, const EnumerateOptions& options) {
    if (const auto* scaled = std::get_if<ScaledClassification>(&c)) {
        return verify_scaled(generators, *scaled, bound, options);
    }
    return verify_tempered(generators, std::get<TemperedClassification>(c), bound, options);
}

}  // namespace omega
