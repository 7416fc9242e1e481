#include "omega/temperament.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "omega/errors.hpp"

namespace omega {

namespace {

void validate(const EdoMap& map) {
    if (map.divisions < 1) throw UnsupportedValueError("divisions must be positive");
    if (map.theta.sign() < 0 || map.theta >= Rational(1)) {
        throw UnsupportedValueError("theta must lie in [0, 1)");
    }
    if (map.divisions > 100'000) {
        throw BoundTooLargeError("division count exceeds the computation budget");
    }
}

// Pitch of harmonic i in scale steps: d * log2(i) + theta.
ExactReal harmonic_pitch(const EdoMap& map, std::uint64_t harmonic) {
    return add(scalar_mul(Rational(map.divisions), ExactReal::log2_of(Int(harmonic))),
               ExactReal(map.theta));
}

}  // namespace

Int harmonic_floor(const EdoMap& map, std::uint64_t harmonic) {
    validate(map);
    if (harmonic == 0) throw UnsupportedValueError("harmonic index starts at 1");
    return harmonic_pitch(map, harmonic).floor();
}

HarmonicSemigroupResult harmonic_semigroup(const EdoMap& map) {
    validate(map);
    // Consecutive floors step by at most 1 once d*log2((i+1)/i) < 1, i.e.
    // (i+1)^d < 2*i^d; from that index on every integer >= the floor is hit.
    std::uint64_t i0 = 1;
    while (!(pow_checked(Int(i0 + 1), Int(map.divisions)) <
             2 * pow_checked(Int(i0), Int(map.divisions)))) {
        ++i0;
    }

    HarmonicSemigroupResult result;
    std::set<std::uint64_t> image;
    for (std::uint64_t i = 1; i <= i0; ++i) {
        image.insert(harmonic_floor(map, i).convert_to<std::uint64_t>());
    }
    std::uint64_t cofinite_from = *image.rbegin();
    // Trim: walk the conductor down while its predecessor is present.
    while (cofinite_from > 0 && image.count(cofinite_from - 1)) --cofinite_from;
    result.cofinite_from = cofinite_from;
    result.floor_values.assign(image.begin(), image.lower_bound(cofinite_from));

    auto member = [&](std::uint64_t x) {
        return x >= cofinite_from || image.count(x) != 0;
    };
    // Additive closure: only sums below the cofinite threshold can fail.
    for (std::uint64_t x : result.floor_values) {
        if (x == 0) continue;
        for (std::uint64_t y : result.floor_values) {
            if (y == 0 || y > x) continue;
            const std::uint64_t s = x + y;
            if (s < cofinite_from && !member(s)) {
                result.closed = false;
                result.witness = {y, x};
                return result;
            }
        }
    }
    result.closed = true;
    std::vector<std::uint64_t> gaps;
    for (std::uint64_t x = 0; x < cofinite_from; ++x) {
        if (!member(x)) gaps.push_back(x);
    }
    result.semigroup = NumericalSemigroup::from_gaps(std::move(gaps));
    return result;
}

bool floor_relation_check(std::int64_t scale, const Rational& theta,
                          const std::vector<ExactReal>& source_elements,
                          const NumericalSemigroup& target, std::size_t n) {
    if (source_elements.size() < n) {
        throw InsufficientElementsError("source has " + std::to_string(source_elements.size()) +
                                        " elements, need " + std::to_string(n));
    }
    // Floor image of the source prefix, deduplicated (consecutive source
    // elements may share a floor).
    std::vector<Int> image;
    for (std::size_t i = 0; i < n; ++i) {
        Int v = add(scalar_mul(Rational(scale), source_elements[i]), ExactReal(theta)).floor();
        if (image.empty() || image.back() != v) image.push_back(v);
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());

    // Compare against the leading elements of the target enumeration.
    std::uint64_t x = 0;
    for (const Int& v : image) {
        while (!target.contains(x)) ++x;
        if (v < 0 || Int(x) != v) return false;
        ++x;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Scales

Scale pythagorean_scale(unsigned n_fifths) {
    if (n_fifths > 64) throw BoundTooLargeError("at most 64 fifths are supported");
    const ExactReal fifth = ExactReal::log2_of(Rational(3, 2));

    struct Entry {
        ExactReal pitch;
        std::string label;
    };
    std::vector<Entry> entries;
    for (unsigned j = 0; j <= n_fifths; ++j) {
        const ExactReal raw = scalar_mul(Rational(j), fifth);
        const Int k = raw.floor();
        const ExactReal pitch = sub(raw, ExactReal(k));
        // pitch = log2(3^j / 2^(j+k))
        const Int two_exp = Int(j) + k;
        entries.push_back({pitch, "3^" + std::to_string(j) + "/2^" + two_exp.str()});
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return compare(a.pitch, b.pitch) < 0; });

    Scale scale;
    scale.name = "pythagorean_" + std::to_string(n_fifths);
    scale.description = "Pythagorean tuning from " + std::to_string(n_fifths) +
                        " ascending fifths (" + std::to_string(n_fifths + 1) + " pitch classes)";
    scale.comments.push_back(
        "traditional exception: the fourth is tuned 4/3 (ratio 3^-1 : 2^-1), which the ascending "
        "circle of fifths does not produce");
    scale.style = Scale::PitchStyle::ratio_preferred;
    for (auto& e : entries) scale.pitches.push_back({std::move(e.pitch), std::move(e.label)});
    scale.pitches.push_back({ExactReal(1), "2/1"});
    return scale;
}

Scale edo_scale(unsigned divisions) {
    if (divisions == 0) throw UnsupportedValueError("divisions must be positive");
    Scale scale;
    scale.name = "edo_" + std::to_string(divisions);
    scale.description = std::to_string(divisions) + "-EDO (equal division of the octave)";
    scale.style = Scale::PitchStyle::cents;
    for (unsigned k = 0; k <= divisions; ++k) {
        scale.pitches.push_back({ExactReal(Rational(k, divisions)),
                                 std::to_string(k) + "\\" + std::to_string(divisions)});
    }
    return scale;
}

namespace {

// The frequency ratio 2^x as a rational, when x is an integer combination
// of 1 and log2 of primes.
std::optional<std::pair<Int, Int>> frequency_ratio(const ExactReal& pitch) {
    Int num = 1, den = 1;
    auto apply = [&](const Int& base, const Rational& exp) {
        if (!exp.is_integer()) return false;
        const Int e = exp.numerator();
        if (e >= 0) {
            num *= pow_checked(base, e);
        } else {
            den *= pow_checked(base, -e);
        }
        return true;
    };
    switch (pitch.kind()) {
        case Kind::rational:
            if (!apply(2, pitch.rational())) return std::nullopt;
            return std::make_pair(num, den);
        case Kind::log_lin: {
            const LogLin& l = pitch.log_lin();
            if (!apply(2, l.q0)) return std::nullopt;
            for (const auto& [p, c] : l.terms) {
                if (!apply(p, c)) return std::nullopt;
            }
            return std::make_pair(num, den);
        }
        case Kind::quad_surd: return std::nullopt;
    }
    return std::nullopt;
}

std::string cents_line(const ExactReal& pitch) {
    return scalar_mul(Rational(1200), pitch).to_decimal(6);
}

}  // namespace

std::string render_scl(const Scale& scale) {
    if (scale.pitches.size() < 2 || !scale.pitches.front().value.is_zero()) {
        throw UnsupportedValueError("scale must start at 0 and contain the octave");
    }
    std::ostringstream out;
    out << "! " << scale.name << ".scl\n!\n";
    for (const auto& c : scale.comments) out << "! " << c << "\n";
    out << scale.description << "\n";
    out << " " << scale.pitches.size() - 1 << "\n!\n";
    // By .scl convention the unison 1/1 is implicit; everything after it,
    // including the octave, gets a line.
    for (std::size_t i = 1; i < scale.pitches.size(); ++i) {
        const ExactReal& pitch = scale.pitches[i].value;
        if (scale.style == Scale::PitchStyle::ratio_preferred) {
            if (auto ratio = frequency_ratio(pitch)) {
                out << " " << ratio->first.str() << "/" << ratio->second.str() << "\n";
                continue;
            }
        }
        out << " " << cents_line(pitch) << "\n";
    }
    return out.str();
}

void export_scl(const Scale& scale, const std::string& path) {
    const std::string body = render_scl(scale);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out << body;
        if (!out.flush()) throw IoError("write to " + tmp + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("rename to " + path + " failed");
    }
}

std::vector<ExactReal> parse_scl_pitches(std::istream& in) {
    std::vector<ExactReal> pitches{ExactReal()};  // implicit 1/1
    std::string line;
    int stage = 0;  // 0: description pending, 1: count pending, 2: pitches
    long long expected = -1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) {
            if (stage == 0) ++stage;  // empty description line
            continue;
        }
        if (line[start] == '!') continue;
        std::string token = line.substr(start);
        token = token.substr(0, token.find_first_of(" \t"));
        if (stage == 0) {
            ++stage;  // description line, content ignored
            continue;
        }
        if (stage == 1) {
            expected = std::stoll(token);
            ++stage;
            continue;
        }
        if (token.find('.') != std::string::npos) {
            // cents
            pitches.push_back(ExactReal(Rational::parse(token) / Rational(1200)));
        } else if (token.find('/') != std::string::npos) {
            const auto slash = token.find('/');
            const Rational ratio(Int(token.substr(0, slash)), Int(token.substr(slash + 1)));
            pitches.push_back(ExactReal::log2_of(ratio));
        } else {
            pitches.push_back(ExactReal::log2_of(Rational::parse(token)));
        }
    }
    if (expected >= 0 && pitches.size() != static_cast<std::size_t>(expected) + 1) {
        throw ParseError("scl pitch count mismatch");
    }
    return pitches;
}

void harmonic_table_csv(std::ostream& out, const EdoMap& map, std::uint64_t max_harmonic,
                        unsigned digits) {
    validate(map);
    out << "harmonic,frequency_ratio,exact_pitch,floor\n";
    for (std::uint64_t i = 1; i <= max_harmonic; ++i) {
        const ExactReal pitch =
            scalar_mul(Rational(map.divisions), ExactReal::log2_of(Int(i)));
        out << i << ',' << i << ',' << pitch.to_decimal(digits) << ','
            << harmonic_floor(map, i).str() << '\n';
    }
}

}  // namespace omega
