#pragma once

#include <string>
#include <variant>
#include <vector>

#include "omega/exact.hpp"
#include "omega/monoid.hpp"
#include "omega/numsgp.hpp"

// Decides, from a finite exact generating set, whether the generated monoid
// is a scalar multiple of a numerical semigroup or a tempered monoid, and
// produces the scale factor and semigroup in the former case. Pure functions
// over immutable inputs.

namespace omega {

struct ScaledClassification {
    ExactReal lambda;             // positive; the generators equal lambda * (integer generators)
    NumericalSemigroup semigroup;
};

struct TemperedClassification {
    ExactReal witness_a;  // a pair of generators with irrational ratio
    ExactReal witness_b;
    std::string reason;   // "incommensurable-pair" or "infinite-generating-set"
};

using Classification = std::variant<ScaledClassification, TemperedClassification>;

// Is x / y rational? Exact and total for positive x, y: rationals always
// commensurable; surds over the same radicand commensurable iff their
// (a, b) coordinate vectors are proportional; log-linear values iff their
// full coefficient vectors are proportional over Q; everything across
// genuinely irrational kinds is incommensurable.
bool commensurable_pair(const ExactReal& x, const ExactReal& y);

// Any incommensurable pair of generators makes the monoid tempered;
// otherwise a common rational denominator rescales the generators to
// coprime integers, exhibiting the monoid as lambda times a numerical
// semigroup.
Classification classify(const std::vector<ExactReal>& generators);

// Scaled case: exact elementwise equality of the enumeration against
// lambda times the semigroup. Tempered case: a bounded-prefix sanity
// signal (incommensurable footprint values and shrinking consecutive gaps
// over the top half of the range), not a proof; temperedness itself is
// established by the witness pair.
bool verify_classification(const std::vector<ExactReal>& generators, const Classification& c,
                           const ExactReal& bound, const EnumerateOptions& options = {});

}  // namespace omega
