#include "omega/monoid.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <queue>
#include <set>
#include <utility>

#include "omega/errors.hpp"
#include "omega/temperament.hpp"

namespace omega {

// ---------------------------------------------------------------------------
// Descriptors

MonoidDescriptor MonoidDescriptor::finite(std::vector<ExactReal> generators) {
    if (generators.empty()) throw UnsupportedValueError("empty generator list");
    for (const auto& g : generators) {
        if (g.sign() <= 0) throw UnsupportedValueError("generators must be positive");
    }
    // Sorting doubles as the mutual-comparability check (compare throws on
    // incomparable kinds) and exposes duplicates.
    std::sort(generators.begin(), generators.end(), ExactLess{});
    for (std::size_t i = 1; i < generators.size(); ++i) {
        if (generators[i - 1] == generators[i]) {
            throw UnsupportedValueError("duplicate generator " + generators[i].str());
        }
    }
    return MonoidDescriptor(FiniteGenerators{std::move(generators)});
}

MonoidDescriptor MonoidDescriptor::radix_fractal(std::uint64_t radix, std::uint64_t exponent_offset) {
    if (radix < 2) throw UnsupportedValueError("radix must be at least 2");
    return MonoidDescriptor(RadixFractal{radix, exponent_offset});
}

MonoidDescriptor MonoidDescriptor::harmonic(std::int64_t divisions, Rational theta) {
    if (divisions < 1) throw UnsupportedValueError("divisions must be positive");
    if (theta.sign() < 0 || theta >= Rational(1)) {
        throw UnsupportedValueError("theta must lie in [0, 1)");
    }
    return MonoidDescriptor(HarmonicFamily{divisions, std::move(theta)});
}

std::string MonoidDescriptor::name() const {
    struct Namer {
        std::string operator()(const FiniteGenerators& f) const {
            std::string out = "<";
            for (std::size_t i = 0; i < f.generators.size(); ++i) {
                if (i) out += ",";
                out += f.generators[i].str();
            }
            return out + ">";
        }
        std::string operator()(const Logarithmic&) const { return "logarithmic"; }
        std::string operator()(const Pythagorean&) const { return "pythagorean"; }
        std::string operator()(const GoldenFractal&) const { return "golden-fractal"; }
        std::string operator()(const RadixFractal& r) const {
            return "radix-fractal(" + std::to_string(r.radix) + ",n+" +
                   std::to_string(r.exponent_offset) + ")";
        }
        std::string operator()(const HarmonicFamily& h) const {
            return "harmonic(" + std::to_string(h.divisions) + "," + h.theta.str() + ")";
        }
    };
    return std::visit(Namer{}, v_);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void check_cap(std::size_t count, const EnumerateOptions& options) {
    if (count > options.element_cap) {
        throw BoundTooLargeError("enumeration would exceed the element cap of " +
                                 std::to_string(options.element_cap));
    }
}

ElementList enumerate_finite(const FiniteGenerators& desc, const ExactReal& bound,
                             const EnumerateOptions& options) {
    // Best-first expansion: repeatedly take the smallest unseen sum and push
    // its successors. Deduplication is by exact equality of canonical forms;
    // distinct elements can be arbitrarily close, so numeric proximity would
    // be wrong.
    struct Greater {
        bool operator()(const ExactReal& x, const ExactReal& y) const { return compare(x, y) > 0; }
    };
    std::priority_queue<ExactReal, std::vector<ExactReal>, Greater> frontier;
    std::set<ExactReal, ExactLess> seen;

    ElementList out{bound, {}};
    frontier.push(ExactReal());
    seen.insert(ExactReal());
    while (!frontier.empty()) {
        ExactReal x = frontier.top();
        frontier.pop();
        out.elements.push_back(x);
        check_cap(out.elements.size(), options);
        for (const auto& g : desc.generators) {
            ExactReal y = add(x, g);
            if (compare(y, bound) > 0) continue;
            if (seen.insert(y).second) frontier.push(y);
        }
    }
    return out;
}

ElementList enumerate_logarithmic(const ExactReal& bound, const EnumerateOptions& options) {
    // Elements are log2(n) for 1 <= n <= 2^bound. Resolve n_max by exact
    // comparison, refuse clearly over-budget bounds first.
    if (compare(ExactReal::log2_of(Int(options.element_cap) + 1), bound) <= 0) {
        throw BoundTooLargeError("logarithmic enumeration to bound " + bound.str() +
                                 " exceeds the element cap");
    }
    const Int k = bound.floor();  // 2^k <= 2^bound < 2^(k+1)
    std::uint64_t lo = 1, hi = 1;
    if (k >= 0) {
        lo = (Int(1) << k.convert_to<unsigned>()).convert_to<std::uint64_t>();
        hi = lo * 2;
    }
    // Largest n with log2(n) <= bound lies in [lo, hi].
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (compare(ExactReal::log2_of(Int(mid)), bound) <= 0) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    const std::uint64_t n_max = lo;
    check_cap(n_max, options);

    // Smallest-prime-factor sieve; building each log2(n) from its
    // factorization avoids per-element trial division.
    std::vector<std::uint32_t> spf(n_max + 1, 0);
    for (std::uint64_t i = 2; i <= n_max; ++i) {
        if (spf[i] == 0) {
            for (std::uint64_t j = i; j <= n_max; j += i) {
                if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
            }
        }
    }
    ElementList out{bound, {}};
    out.elements.reserve(n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        LogLin l;
        std::uint64_t v = n;
        while (v > 1) {
            const std::uint64_t p = spf[v];
            unsigned e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            l.terms[Int(p)] = Rational(e);
        }
        out.elements.push_back(ExactReal(std::move(l)));
    }
    return out;
}

ElementList enumerate_pythagorean(const ExactReal& bound, const EnumerateOptions& options) {
    const ExactReal log2_3 = ExactReal::log2_of(Int(3));
    ElementList out{bound, {}};
    for (std::uint64_t j = 0;; ++j) {
        const ExactReal lead = scalar_mul(Rational(j), log2_3);
        const ExactReal room = sub(bound, lead);
        if (room.sign() < 0) break;
        const Int i_max = room.floor();
        for (Int i = 0; i <= i_max; ++i) {
            out.elements.push_back(add(ExactReal(i), lead));
            check_cap(out.elements.size(), options);
        }
    }
    std::sort(out.elements.begin(), out.elements.end(), ExactLess{});
    return out;
}

ElementList filter_to_bound(ElementList el, const ExactReal& bound) {
    while (!el.elements.empty() && compare(el.elements.back(), bound) > 0) el.elements.pop_back();
    el.bound = bound;
    return el;
}

ElementList enumerate_harmonic(const HarmonicFamily& fam, const ExactReal& bound,
                               const EnumerateOptions& options) {
    const auto result = harmonic_semigroup(EdoMap{fam.divisions, fam.theta});
    if (!result.closed) {
        const auto [a, b] = *result.witness;
        throw NotClosedError({a, b}, "harmonic floor image is not additively closed");
    }
    const Int k = bound.floor();
    if (k < 0) throw UnsupportedValueError("bound must be positive");
    if (k >= Int(options.element_cap)) {
        throw BoundTooLargeError("harmonic enumeration exceeds the element cap");
    }
    ElementList out{bound, {}};
    for (std::uint64_t x : result.semigroup->elements_up_to(k.convert_to<std::uint64_t>())) {
        out.elements.push_back(ExactReal(Rational(x)));
    }
    return out;
}

}  // namespace

std::vector<ExactReal> subdivide(const std::vector<ExactReal>& cuts,
                                 const std::vector<ExactReal>& proportions) {
    if (cuts.empty() || !cuts.front().is_zero()) {
        throw UnsupportedValueError("cut list must start at 0");
    }
    if (proportions.size() < 2) {
        throw InvalidProportionsError("need at least two parts");
    }
    ExactReal total;
    for (const auto& p : proportions) {
        if (p.sign() <= 0) throw InvalidProportionsError("proportions must be positive");
        total = add(total, p);
    }
    if (!(compare(total, ExactReal(1)) == 0)) {
        throw InvalidProportionsError("proportions must sum to 1");
    }
    // Interior split points of the unit interval: r1, r1+r2, ...
    std::vector<ExactReal> splits;
    ExactReal acc;
    for (std::size_t i = 0; i + 1 < proportions.size(); ++i) {
        acc = add(acc, proportions[i]);
        splits.push_back(acc);
    }

    std::vector<ExactReal> out;
    out.reserve(cuts.size() * proportions.size());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const ExactReal& left = cuts[i];
        const ExactReal right = i + 1 < cuts.size() ? cuts[i + 1] : ExactReal(1);
        if (compare(left, right) >= 0 || compare(right, ExactReal(1)) > 0) {
            throw UnsupportedValueError("cuts must be strictly increasing within [0, 1)");
        }
        const ExactReal length = sub(right, left);
        out.push_back(left);
        for (const auto& s : splits) {
            out.push_back(add(left, mul(s, length)));
        }
    }
    return out;
}

ElementList golden_fractal(std::uint64_t n_periods, const EnumerateOptions& options) {
    if (n_periods >= 62) throw BoundTooLargeError("golden fractal period count too large");
    check_cap((std::uint64_t(1) << (n_periods + 1)), options);

    const std::vector<ExactReal> proportions = {
        ExactReal::quad(Rational(-1, 2), Rational(1, 2), 5),  // phi - 1
        ExactReal::quad(Rational(3, 2), Rational(-1, 2), 5),  // 2 - phi
    };
    ElementList out{ExactReal(Int(n_periods + 1)), {}};
    out.elements.push_back(ExactReal());
    std::vector<ExactReal> cuts{ExactReal()};
    for (std::uint64_t k = 1; k <= n_periods; ++k) {
        cuts = subdivide(cuts, proportions);
        for (const auto& c : cuts) {
            out.elements.push_back(add(ExactReal(Int(k)), c));
        }
        check_cap(out.elements.size(), options);
    }
    out.elements.push_back(ExactReal(Int(n_periods + 1)));
    return out;
}

ElementList radix_fractal(std::uint64_t radix, std::uint64_t exponent_offset,
                          std::uint64_t n_periods, const EnumerateOptions& options) {
    if (radix < 2) throw UnsupportedValueError("radix must be at least 2");
    // Period n contributes r^(n + offset) elements; cap first.
    Int count = 2;
    for (std::uint64_t n = 1; n <= n_periods; ++n) {
        count += pow_checked(Int(radix), Int(n + exponent_offset));
        if (count > Int(options.element_cap)) {
            throw BoundTooLargeError("radix fractal enumeration exceeds the element cap");
        }
    }
    ElementList out{ExactReal(Int(n_periods + 1)), {}};
    out.elements.push_back(ExactReal());
    for (std::uint64_t n = 1; n <= n_periods; ++n) {
        const Int den = pow_checked(Int(radix), Int(n + exponent_offset));
        for (Int k = 0; k < den; ++k) {
            out.elements.push_back(ExactReal(Rational(Int(n) * den + k, den)));
        }
    }
    out.elements.push_back(ExactReal(Int(n_periods + 1)));
    return out;
}

ElementList enumerate(const MonoidDescriptor& desc, const ExactReal& bound,
                      const EnumerateOptions& options) {
    if (bound.sign() <= 0) throw UnsupportedValueError("bound must be positive");
    struct Visitor {
        const ExactReal& bound;
        const EnumerateOptions& options;

        ElementList operator()(const FiniteGenerators& f) const {
            return enumerate_finite(f, bound, options);
        }
        ElementList operator()(const Logarithmic&) const {
            return enumerate_logarithmic(bound, options);
        }
        ElementList operator()(const Pythagorean&) const {
            return enumerate_pythagorean(bound, options);
        }
        ElementList operator()(const GoldenFractal&) const {
            return filter_to_bound(golden_fractal(periods_within_bound(), options), bound);
        }
        ElementList operator()(const RadixFractal& r) const {
            return filter_to_bound(
                radix_fractal(r.radix, r.exponent_offset, periods_within_bound(), options), bound);
        }

        std::uint64_t periods_within_bound() const {
            const Int k = bound.floor();
            if (k > 1'000'000) throw BoundTooLargeError("fractal enumeration bound too large");
            return k.convert_to<std::uint64_t>();
        }
        ElementList operator()(const HarmonicFamily& h) const {
            return enumerate_harmonic(h, bound, options);
        }
    };
    return std::visit(Visitor{bound, options}, desc.value());
}

ElementList first_n_elements(const MonoidDescriptor& desc, std::size_t n,
                             const EnumerateOptions& options) {
    if (n == 0) throw UnsupportedValueError("need at least one element");
    check_cap(n, options);

    // Grow the bound until the enumeration is long enough. The growth rule
    // adapts to the family: +1 per step for the exponential families
    // (element counts double or better), doubling for the polynomial ones.
    const bool additive_growth =
        std::holds_alternative<Logarithmic>(desc.value()) ||
        std::holds_alternative<GoldenFractal>(desc.value()) ||
        std::holds_alternative<RadixFractal>(desc.value());

    Int b = 1;
    for (;;) {
        ElementList el = enumerate(desc, ExactReal(b), options);
        if (el.elements.size() >= n) {
            el.elements.resize(n, ExactReal());
            el.bound = el.elements.back();
            return el;
        }
        b = additive_growth ? Int(b + 1) : Int(b * 2);
    }
}

bool contains_element(const ElementList& el, const ExactReal& x) {
    return std::binary_search(el.elements.begin(), el.elements.end(), x, ExactLess{});
}

std::vector<ExactReal> minimal_generating_set(const ElementList& el) {
    std::vector<ExactReal> out;
    for (std::size_t i = 1; i < el.elements.size(); ++i) {
        const ExactReal& e = el.elements[i];
        bool decomposable = false;
        for (std::size_t j = 1; j < el.elements.size(); ++j) {
            const ExactReal& x = el.elements[j];
            if (compare(add(x, x), e) > 0) break;  // parts are at most e/2
            if (contains_element(el, sub(e, x))) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) out.push_back(e);
    }
    return out;
}

Footprint footprint(const ElementList& el) {
    if (el.elements.size() < 2) {
        throw InsufficientElementsError("footprint needs at least one nonzero element");
    }
    const ExactReal& a1 = el.elements[1];
    std::set<ExactReal, ExactLess> values;
    for (const auto& a : el.elements) {
        const ExactReal q = div(a, a1);
        values.insert(sub(q, ExactReal(q.floor())));
    }
    Footprint out{el.bound, {}};
    out.values.assign(values.begin(), values.end());
    return out;
}

std::vector<Period> periods(const ElementList& el, std::uint64_t upto) {
    if (upto == 0) throw UnsupportedValueError("period index starts at 1");
    if (el.elements.size() < 2 || !(el.elements[1] == ExactReal(1))) {
        throw NotNormalizedError("periods require a normalized monoid (smallest nonzero element 1)");
    }
    if (compare(el.bound, ExactReal(Int(upto + 1))) < 0) {
        throw InsufficientElementsError("element list must reach " + std::to_string(upto + 1));
    }
    std::vector<Period> out;
    out.reserve(upto);
    for (std::uint64_t i = 1; i <= upto; ++i) out.push_back(Period{i, {}});
    for (std::size_t i = 1; i < el.elements.size(); ++i) {
        const Int k = el.elements[i].floor();
        if (k >= 1 && k <= Int(upto)) {
            out[k.convert_to<std::uint64_t>() - 1].members.push_back(el.elements[i]);
        }
    }
    return out;
}

std::uint64_t granularity(const ElementList& el) {
    return periods(el, 1).front().members.size();
}

bool product_compatible_check(const ElementList& el, std::uint64_t n) {
    if (n == 0) throw UnsupportedValueError("n must be positive");
    if (el.elements.size() < n * n) {
        throw InsufficientElementsError("need the first " + std::to_string(n * n) + " elements");
    }
    for (std::uint64_t a = 1; a <= n; ++a) {
        for (std::uint64_t b = a; b <= n; ++b) {
            const ExactReal lhs = el.elements[a * b - 1];
            const ExactReal rhs = add(el.elements[a - 1], el.elements[b - 1]);
            if (!(compare(lhs, rhs) == 0)) return false;
        }
    }
    return true;
}

void element_list_csv(std::ostream& out, const ElementList& el, unsigned digits) {
    out << "index,exact,decimal\n";
    for (std::size_t i = 0; i < el.elements.size(); ++i) {
        out << i << ',' << el.elements[i].str() << ',' << el.elements[i].to_decimal(digits) << '\n';
    }
}

}  // namespace omega
