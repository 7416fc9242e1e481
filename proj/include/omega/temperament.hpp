#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omega/exact.hpp"
#include "omega/numsgp.hpp"

// The music layer: exact harmonic-to-equal-temperament floors, the harmonic
// numerical semigroup, the Pythagorean circle of fifths, and Scala tuning
// file export. Pure computation; file writes are whole-file atomic.

namespace omega {

// d equal divisions per octave with a rational offset theta in [0,1).
// theta = 3/5 with d = 12 reproduces the well-tempered harmonic semigroup;
// theta = 1/2 is rounding to nearest, which differs at the 13th harmonic.
struct EdoMap {
    std::int64_t divisions = 12;
    Rational theta = Rational(0);
};

// floor(d * log2(i) + theta), decided by integer power comparison.
Int harmonic_floor(const EdoMap& map, std::uint64_t harmonic);

struct HarmonicSemigroupResult {
    bool closed = false;
    std::optional<NumericalSemigroup> semigroup;                       // set iff closed
    std::vector<std::uint64_t> floor_values;                           // the image below cofinite_from
    std::uint64_t cofinite_from = 0;                                   // all integers >= this are hit
    std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;    // a sum landing outside, if any
};

// Computes {floor(d log2 i + theta) : i >= 1}. The image is cofinite because
// consecutive pitch gaps d*log2((i+1)/i) drop below 1 from the index
// ceil(1/(2^(1/d)-1)) on, so only finitely many harmonics matter; `closed`
// reports whether the image is additively closed (hence a numerical
// semigroup).
HarmonicSemigroupResult harmonic_semigroup(const EdoMap& map);

// True iff the floors {floor(scale * s + theta) : s in the first n source
// elements}, deduplicated in increasing order, coincide with the leading
// elements of `target`. Distinct source elements may share a floor, so the
// comparison is on the floor image as a set.
bool floor_relation_check(std::int64_t scale, const Rational& theta,
                          const std::vector<ExactReal>& source_elements,
                          const NumericalSemigroup& target, std::size_t n);

struct ScalePitch {
    ExactReal value;    // octave fraction in [0, 1]
    std::string label;  // e.g. "3^2/2^3"; empty when there is no natural name
};

struct Scale {
    enum class PitchStyle {
        ratio_preferred,  // emit exact frequency ratios when the pitch has one
        cents             // always emit cents
    };

    std::string name;
    std::string description;
    std::vector<ScalePitch> pitches;    // strictly increasing, first 0, last 1
    std::vector<std::string> comments;  // emitted as '!' lines in .scl output
    PitchStyle style = PitchStyle::ratio_preferred;
};

// Fractional parts of j*log2(3/2) for j = 0..n_fifths plus the octave,
// sorted; labels carry the 3^i/2^j frequency ratios.
Scale pythagorean_scale(unsigned n_fifths);

Scale edo_scale(unsigned divisions);

// Scala .scl rendering: description, pitch count, then one pitch per line;
// rational frequency ratios as "a/b", everything else as cents with six
// decimals. Byte-stable output.
std::string render_scl(const Scale& scale);

// Atomic write (temp file + rename). Throws IoError.
void export_scl(const Scale& scale, const std::string& path);

// Pitch values (octave fractions) parsed back from a .scl stream: "a/b"
// lines exactly, cents lines as the rational cents/1200.
std::vector<ExactReal> parse_scl_pitches(std::istream& in);

// Columns: harmonic index, frequency ratio, exact pitch in scale steps
// (to `digits` decimals), floored step. Mirrors the harmonic table layout.
void harmonic_table_csv(std::ostream& out, const EdoMap& map, std::uint64_t max_harmonic,
                        unsigned digits);

}  // namespace omega
