#include "omega/numsgp.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cassert>
#include <chrono>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <thread>

#include "omega/errors.hpp"

namespace omega {

namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Keeps the Apery shortest-path table and the derived gap lists sane.
constexpr std::uint64_t kMaxMultiplicity = 50'000'000;

}  // namespace

NumericalSemigroup NumericalSemigroup::natural() {
    NumericalSemigroup s;
    s.finish_construction();
    return s;
}

void NumericalSemigroup::finish_construction() {
    conductor_ = gaps_.empty() ? 0 : gaps_.back() + 1;
    multiplicity_ = 1;
    while (std::binary_search(gaps_.begin(), gaps_.end(), multiplicity_)) ++multiplicity_;

    // Minimal generators are the elements not expressible as a sum of two
    // nonzero elements; they all lie in [m, frobenius + m].
    min_gens_.clear();
    const std::uint64_t hi = conductor_ + multiplicity_;  // frobenius + m, exclusive
    for (std::uint64_t x = multiplicity_; x < hi; ++x) {
        if (!contains(x)) continue;
        bool decomposable = false;
        for (std::uint64_t y = multiplicity_; y * 2 <= x; ++y) {
            if (contains(y) && contains(x - y)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) min_gens_.push_back(x);
    }
    if (min_gens_.empty()) min_gens_.push_back(multiplicity_);  // naturals: {1}
}

bool NumericalSemigroup::contains(std::uint64_t x) const {
    if (x >= conductor_) return true;
    return !std::binary_search(gaps_.begin(), gaps_.end(), x);
}

NumericalSemigroup NumericalSemigroup::from_generators(std::vector<std::uint64_t> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (gens.empty() || gens.front() == 0) {
        throw UnsupportedValueError("generators must be positive integers");
    }
    std::uint64_t g = 0;
    for (std::uint64_t x : gens) g = gcd_u64(g, x);
    if (g != 1) {
        throw NotCoprimeError(g, "generators have gcd " + std::to_string(g));
    }

    const std::uint64_t m = gens.front();
    if (m == 1) return natural();
    if (m > kMaxMultiplicity) {
        throw BoundTooLargeError("multiplicity " + std::to_string(m) + " exceeds the construction budget");
    }

    // dist[r] = smallest element of the semigroup congruent to r mod m
    // (the Apery set), via Dijkstra over residues with edge weights = gens.
    const std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> dist(m, kInf);
    dist[0] = 0;
    using Item = std::pair<std::uint64_t, std::uint64_t>;  // (value, residue)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0, 0);
    while (!heap.empty()) {
        auto [v, r] = heap.top();
        heap.pop();
        if (v != dist[r]) continue;
        for (std::uint64_t gen : gens) {
            const std::uint64_t nv = v + gen;
            const std::uint64_t nr = nv % m;
            if (nv < dist[nr]) {
                dist[nr] = nv;
                heap.emplace(nv, nr);
            }
        }
    }

    NumericalSemigroup s;
    for (std::uint64_t r = 1; r < m; ++r) {
        for (std::uint64_t x = r; x < dist[r]; x += m) s.gaps_.push_back(x);
    }
    std::sort(s.gaps_.begin(), s.gaps_.end());
    s.finish_construction();
    return s;
}

NumericalSemigroup NumericalSemigroup::from_gaps(std::vector<std::uint64_t> gaps) {
    std::sort(gaps.begin(), gaps.end());
    gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
    if (!gaps.empty() && gaps.front() == 0) {
        throw UnsupportedValueError("0 cannot be a gap");
    }
    NumericalSemigroup s;
    s.gaps_ = std::move(gaps);
    s.conductor_ = s.gaps_.empty() ? 0 : s.gaps_.back() + 1;
    // Closure holds iff no gap is a sum of two nonzero nongaps (sums past
    // the largest gap are always inside).
    for (std::uint64_t gap : s.gaps_) {
        for (std::uint64_t x = 1; x * 2 <= gap; ++x) {
            if (s.contains(x) && s.contains(gap - x)) {
                throw NotClosedError({x, gap - x},
                                     std::to_string(x) + " + " + std::to_string(gap - x) +
                                         " = " + std::to_string(gap) + " is a gap");
            }
        }
    }
    s.finish_construction();
    return s;
}

std::vector<std::uint64_t> NumericalSemigroup::apery(std::uint64_t m) const {
    if (m == 0) throw UnsupportedValueError("apery modulus must be positive");
    std::vector<std::uint64_t> out(m);
    for (std::uint64_t r = 0; r < m; ++r) {
        std::uint64_t x = r;
        while (!contains(x)) x += m;
        out[r] = x;
    }
    return out;
}

std::vector<std::uint64_t> NumericalSemigroup::elements_up_to(std::uint64_t bound) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x <= bound; ++x) {
        if (contains(x)) out.push_back(x);
    }
    return out;
}

std::pair<std::uint64_t, NumericalSemigroup> gcd_normalize(std::vector<std::uint64_t> gens) {
    if (gens.empty()) throw UnsupportedValueError("empty generator list");
    std::uint64_t d = 0;
    for (std::uint64_t x : gens) d = gcd_u64(d, x);
    if (d == 0) throw UnsupportedValueError("generators must be positive integers");
    for (auto& x : gens) x /= d;
    return {d, NumericalSemigroup::from_generators(std::move(gens))};
}

// ---------------------------------------------------------------------------
// Genus tree
//
// Classic packed representation: tab[i] = 0 if i was removed (a gap),
// 1 if i is a minimal generator, 2 if i is a decomposable element. Only the
// window [0, conductor + multiplicity) is material; everything beyond is an
// implicit 2. Children remove one generator x with x > frobenius, so each
// semigroup of genus g+1 appears exactly once below genus g.

namespace {

constexpr unsigned kHardCeiling = 60;
constexpr std::size_t kTreeCap = 4 * kHardCeiling + 8;

struct TreeNode {
    std::array<std::uint8_t, kTreeCap> tab;
    std::uint32_t c = 0;      // conductor
    std::uint32_t m = 0;      // multiplicity
    std::uint32_t genus = 0;
};

TreeNode tree_root() {
    TreeNode n;
    n.c = 1;
    n.m = 1;
    n.genus = 0;
    n.tab.fill(0);
    n.tab[0] = 2;
    n.tab[1] = 1;
    return n;
}

void tree_child(const TreeNode& s, std::uint32_t x, TreeNode& out) {
    out.c = x + 1;
    out.m = (x == s.m) ? s.m + 1 : s.m;
    out.genus = s.genus + 1;
    const std::uint32_t old_size = s.c + s.m;
    const std::uint32_t new_size = out.c + out.m;
    assert(new_size <= kTreeCap);

    std::array<std::uint8_t, kTreeCap / 2> irr;  // minimal generators seen so far
    std::size_t n_irr = 0;
    for (std::uint32_t i = 0; i < x; ++i) {
        const std::uint8_t v = s.tab[i];
        out.tab[i] = v;
        if (v == 1) irr[n_irr++] = static_cast<std::uint8_t>(i);
    }
    out.tab[x] = 0;
    for (std::uint32_t i = x + 1; i < new_size; ++i) {
        const std::uint8_t v = i < old_size ? s.tab[i] : std::uint8_t{2};
        if (v == 1) {
            // Removing an element never creates new decompositions.
            out.tab[i] = 1;
            irr[n_irr++] = static_cast<std::uint8_t>(i);
            continue;
        }
        // Was decomposable; recheck, since decompositions through x are gone.
        // i is decomposable iff i - g is a nonzero element for some minimal
        // generator g < i.
        bool decomposable = false;
        for (std::size_t j = 0; j < n_irr; ++j) {
            if (out.tab[i - irr[j]] != 0) {
                decomposable = true;
                break;
            }
        }
        out.tab[i] = decomposable ? 2 : 1;
        if (!decomposable) irr[n_irr++] = static_cast<std::uint8_t>(i);
    }
}

void count_subtree(const TreeNode& node, unsigned g_max, std::vector<std::uint64_t>& counts) {
    ++counts[node.genus];
    if (node.genus >= g_max) return;
    TreeNode child;
    for (std::uint32_t x = node.c; x < node.c + node.m; ++x) {
        if (node.tab[x] == 1) {
            tree_child(node, x, child);
            count_subtree(child, g_max, counts);
        }
    }
}

// Counts nodes of genus < cutoff and collects the cutoff level as tasks.
void collect_frontier(const TreeNode& node, unsigned cutoff, std::vector<std::uint64_t>& counts,
                      std::vector<TreeNode>& frontier) {
    if (node.genus == cutoff) {
        frontier.push_back(node);
        return;
    }
    ++counts[node.genus];
    TreeNode child;
    for (std::uint32_t x = node.c; x < node.c + node.m; ++x) {
        if (node.tab[x] == 1) {
            tree_child(node, x, child);
            collect_frontier(child, cutoff, counts, frontier);
        }
    }
}

std::vector<std::uint64_t> count_to_depth(unsigned g_max, unsigned threads, unsigned spawn_depth) {
    std::vector<std::uint64_t> counts(g_max + 1, 0);
    const TreeNode root = tree_root();
    if (threads <= 1 || g_max <= spawn_depth) {
        count_subtree(root, g_max, counts);
        return counts;
    }

    std::vector<TreeNode> frontier;
    collect_frontier(root, spawn_depth, counts, frontier);

    std::atomic<std::size_t> next{0};
    std::vector<std::vector<std::uint64_t>> locals(threads, std::vector<std::uint64_t>(g_max + 1, 0));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (;;) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= frontier.size()) break;
                count_subtree(frontier[i], g_max, locals[t]);
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& local : locals) {
        for (std::size_t g = 0; g <= g_max; ++g) counts[g] += local[g];
    }
    return counts;
}

}  // namespace

GenusCountReport genus_count(unsigned g_max, const GenusCountOptions& options) {
    const unsigned ceiling = std::min(options.ceiling, kHardCeiling);
    if (g_max > ceiling) {
        throw CeilingExceededError("genus " + std::to_string(g_max) + " exceeds the ceiling " +
                                   std::to_string(ceiling));
    }
    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;

    // Deepening runs: elapsed_ms[g] is the wall time of a full count up to
    // genus g. The geometric growth of the tree keeps the total within a
    // small constant factor of the final run.
    GenusCountReport report;
    report.counts.assign(g_max + 1, 0);
    report.elapsed_ms.assign(g_max + 1, 0.0);
    for (unsigned depth = 0; depth <= g_max; ++depth) {
        const auto t0 = std::chrono::steady_clock::now();
        auto counts = count_to_depth(depth, threads, options.spawn_depth);
        const auto t1 = std::chrono::steady_clock::now();
        report.elapsed_ms[depth] = std::chrono::duration<double, std::milli>(t1 - t0).count();
        for (unsigned g = 0; g <= depth; ++g) report.counts[g] = counts[g];
    }
    return report;
}

void genus_report_csv(std::ostream& out, const GenusCountReport& report, bool timings) {
    out << (timings ? "g,n_g,elapsed_ms\n" : "g,n_g\n");
    for (std::size_t g = 0; g < report.counts.size(); ++g) {
        out << g << ',' << report.counts[g];
        if (timings) {
            std::ostringstream ms;
            ms.setf(std::ios::fixed);
            ms.precision(3);
            ms << report.elapsed_ms[g];
            out << ',' << ms.str();
        }
        out << '\n';
    }
}

}  // namespace omega
