#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "omega/exact.hpp"

// Increasingly enumerable additive submonoids of the reals: descriptors for
// the builtin families, bounded exact enumeration, minimal generating sets,
// footprints and periods. Result types are immutable and freely shareable;
// a single enumeration runs sequentially, independent enumerations may run
// concurrently.

namespace omega {

struct FiniteGenerators {
    std::vector<ExactReal> generators;  // positive, strictly increasing, mutually comparable
};
struct Logarithmic {};   // {log2(n) : n >= 1}
struct Pythagorean {};   // {i + j*log2(3) : i, j >= 0}
struct GoldenFractal {};
struct RadixFractal {
    std::uint64_t radix;            // r >= 2
    std::uint64_t exponent_offset;  // period n uses denominator r^(n + offset)
};
struct HarmonicFamily {
    std::int64_t divisions;
    Rational theta;
};

class MonoidDescriptor {
public:
    using Variant = std::variant<FiniteGenerators, Logarithmic, Pythagorean, GoldenFractal,
                                 RadixFractal, HarmonicFamily>;

    static MonoidDescriptor finite(std::vector<ExactReal> generators);  // validates and sorts
    static MonoidDescriptor logarithmic() { return MonoidDescriptor(Logarithmic{}); }
    static MonoidDescriptor pythagorean() { return MonoidDescriptor(Pythagorean{}); }
    static MonoidDescriptor golden_fractal() { return MonoidDescriptor(GoldenFractal{}); }
    static MonoidDescriptor radix_fractal(std::uint64_t radix, std::uint64_t exponent_offset);
    static MonoidDescriptor harmonic(std::int64_t divisions, Rational theta);

    const Variant& value() const { return v_; }
    std::string name() const;

private:
    explicit MonoidDescriptor(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

// Exactly the monoid elements <= bound, strictly increasing, starting at 0.
struct ElementList {
    ExactReal bound;
    std::vector<ExactReal> elements;
};

// Fractional parts of a / a1 over the elements <= truncation_bound, where
// a1 is the smallest nonzero element; deduplicated and sorted.
struct Footprint {
    ExactReal truncation_bound;
    std::vector<ExactReal> values;
};

struct Period {
    std::uint64_t index;             // i >= 1
    std::vector<ExactReal> members;  // elements in [i, i+1)
};

struct EnumerateOptions {
    std::uint64_t element_cap = 10'000'000;
};

ElementList enumerate(const MonoidDescriptor& desc, const ExactReal& bound,
                      const EnumerateOptions& options = {});

// The first n elements of the monoid (bound chosen internally).
ElementList first_n_elements(const MonoidDescriptor& desc, std::size_t n,
                             const EnumerateOptions& options = {});

// Binary search by exact comparison.
bool contains_element(const ElementList& el, const ExactReal& x);

// Every nonzero element <= bound that is not a sum of two nonzero elements.
// Complete for generators <= bound, since any decomposition uses parts < g.
std::vector<ExactReal> minimal_generating_set(const ElementList& el);

Footprint footprint(const ElementList& el);

// Requires a normalized list (second element exactly 1) reaching upto + 1.
std::vector<Period> periods(const ElementList& el, std::uint64_t upto);
std::uint64_t granularity(const ElementList& el);

// Splits every subinterval of [0,1) delimited by `cuts` (plus the implicit
// right endpoint 1) at the interior proportions given by `proportions`
// (positive, summing to 1).
std::vector<ExactReal> subdivide(const std::vector<ExactReal>& cuts,
                                 const std::vector<ExactReal>& proportions);

// Periods 1..n_periods of the golden fractal monoid (cut proportions
// (phi-1, 2-phi)), plus the opening element of period n_periods + 1;
// everything in exact sqrt(5) arithmetic.
ElementList golden_fractal(std::uint64_t n_periods, const EnumerateOptions& options = {});

// Periods 1..n_periods of {n + k / r^(n+c)}, plus the opening element of the
// next period.
ElementList radix_fractal(std::uint64_t radix, std::uint64_t exponent_offset,
                          std::uint64_t n_periods, const EnumerateOptions& options = {});

// Checks tau_{ab-1} = tau_{a-1} + tau_{b-1} for all 1 <= a, b <= n; the
// identity characterizing the logarithmic monoid. Requires n*n elements.
bool product_compatible_check(const ElementList& el, std::uint64_t n);

void element_list_csv(std::ostream& out, const ElementList& el, unsigned digits);

}  // namespace omega
