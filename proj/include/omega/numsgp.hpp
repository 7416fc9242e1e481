#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

// Numerical semigroups: cofinite additive submonoids of the nonnegative
// integers, stored by gap set + conductor. Instances are immutable after
// construction.

namespace omega {

class NumericalSemigroup {
public:
    // The full set of nonnegative integers (no gaps).
    static NumericalSemigroup natural();

    // Smallest numerical semigroup containing `gens`; requires gcd = 1
    // (NotCoprimeError otherwise). Computed by shortest-path dynamic
    // programming on residues modulo the multiplicity (Apery-style).
    static NumericalSemigroup from_generators(std::vector<std::uint64_t> gens);

    // Builds from an explicit gap set, validating that the complement is
    // closed under addition.
    static NumericalSemigroup from_gaps(std::vector<std::uint64_t> gaps);

    bool contains(std::uint64_t x) const;

    std::uint64_t multiplicity() const { return multiplicity_; }
    std::uint64_t genus() const { return static_cast<std::uint64_t>(gaps_.size()); }
    std::int64_t frobenius() const { return static_cast<std::int64_t>(conductor_) - 1; }
    std::uint64_t conductor() const { return conductor_; }

    const std::vector<std::uint64_t>& gaps() const { return gaps_; }
    const std::vector<std::uint64_t>& minimal_generators() const { return min_gens_; }

    // Smallest element of the semigroup in each residue class modulo m
    // (m >= 1); apery(multiplicity()) has size m, minimum 0 and maximum
    // frobenius + m.
    std::vector<std::uint64_t> apery(std::uint64_t m) const;

    std::vector<std::uint64_t> elements_up_to(std::uint64_t bound) const;

    friend bool operator==(const NumericalSemigroup& a, const NumericalSemigroup& b) {
        return a.gaps_ == b.gaps_;
    }

private:
    NumericalSemigroup() = default;
    void finish_construction();  // derives conductor/multiplicity/min gens from gaps_

    std::vector<std::uint64_t> gaps_;      // sorted, strictly increasing
    std::uint64_t conductor_ = 0;          // frobenius + 1
    std::uint64_t multiplicity_ = 1;
    std::vector<std::uint64_t> min_gens_;  // cached on construction
};

// d = gcd of the generators, S' the numerical semigroup generated by
// gens / d; the set generated by `gens` equals d * S' elementwise.
std::pair<std::uint64_t, NumericalSemigroup> gcd_normalize(std::vector<std::uint64_t> gens);

struct GenusCountReport {
    std::vector<std::uint64_t> counts;  // counts[g] = number of semigroups of genus g
    std::vector<double> elapsed_ms;     // elapsed_ms[g] = wall time to count everything up to genus g
};

struct GenusCountOptions {
    unsigned threads = 0;        // 0 = hardware concurrency
    unsigned ceiling = 35;       // refuse larger requests (CeilingExceeded)
    unsigned spawn_depth = 16;   // genus level at which subtrees become parallel tasks
};

// Counts numerical semigroups by genus via the semigroup tree: the root is
// the naturals and the children of S are S minus one minimal generator
// greater than its Frobenius number, which produces every semigroup exactly
// once.
GenusCountReport genus_count(unsigned g_max, const GenusCountOptions& options = {});

void genus_report_csv(std::ostream& out, const GenusCountReport& report, bool timings);

}  // namespace omega
