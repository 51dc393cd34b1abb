#pragma once

// Parity identities for power-set families of squares, and representation
// counts r(gamma) = #{unordered pairs with difference gamma} together with
// the counting constraints they must satisfy.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qdhj/detail/util.hpp"
#include "qdhj/grid.hpp"

namespace qdhj {

namespace detail {

constexpr int kMaxPowersetBits = 24;

}  // namespace detail

/// XOR over all nonempty a of gamma of the square a x a. Cancels to zero
/// exactly when |gamma| >= 3; |gamma| = 2 leaves the two off-diagonal cells,
/// |gamma| = 1 the lone diagonal cell.
inline GridVector powerset_square_sum(const IndexSet& gamma, int n) {
    if (gamma.empty())
        throw std::invalid_argument("powerset_square_sum: gamma must be nonempty");
    if (gamma.ambient() != n)
        throw std::invalid_argument("powerset_square_sum: ambient size mismatch");
    const std::vector<int> idx = gamma.members();
    if (static_cast<int>(idx.size()) > detail::kMaxPowersetBits)
        throw std::length_error("powerset_square_sum: gamma too large to enumerate");
    GridVector acc(n);
    const std::uint64_t subsets = std::uint64_t{1} << idx.size();
    for (std::uint64_t bits = 1; bits < subsets; ++bits) {
        IndexSet a(n, {});
        for (std::size_t t = 0; t < idx.size(); ++t)
            if ((bits >> t) & 1u) a.add(idx[t]);
        acc ^= product_vector(a, a, n);
    }
    return acc;
}

struct ShiftedSum {
    GridVector sum;
    std::uint64_t terms = 0;  // 2^{|gamma1|} squares were XORed
};

/// XOR over ALL a of gamma1 (empty set included) of (a u gamma2) x (a u gamma2).
/// Zero whenever |gamma1| >= 3, for any disjoint shift gamma2.
inline ShiftedSum shifted_powerset_sum(const IndexSet& gamma1, const IndexSet& gamma2, int n) {
    if (gamma1.ambient() != n || gamma2.ambient() != n)
        throw std::invalid_argument("shifted_powerset_sum: ambient size mismatch");
    if (!disjoint(gamma1, gamma2))
        throw std::invalid_argument("shifted_powerset_sum: gamma1 and gamma2 must be disjoint");
    const std::vector<int> idx = gamma1.members();
    if (static_cast<int>(idx.size()) > detail::kMaxPowersetBits)
        throw std::length_error("shifted_powerset_sum: gamma1 too large to enumerate");
    ShiftedSum out{GridVector(n), std::uint64_t{1} << idx.size()};
    for (std::uint64_t bits = 0; bits < out.terms; ++bits) {
        IndexSet a = gamma2;
        for (std::size_t t = 0; t < idx.size(); ++t)
            if ((bits >> t) & 1u) a.add(idx[t]);
        out.sum ^= product_vector(a, a, n);
    }
    return out;
}

struct CellMultiplicities {
    std::uint64_t diagonal = 0;      // subsets containing a fixed i: 2^{|gamma|-1}
    std::uint64_t off_diagonal = 0;  // subsets containing a fixed pair i != j: 2^{|gamma|-2}
};

/// Closed-form multiplicities of a fixed cell across the nonempty-subset
/// square family of gamma. off_diagonal is 0 when |gamma| = 1 (no pairs).
inline CellMultiplicities cell_multiplicities(const IndexSet& gamma) {
    const int size = gamma.size();
    if (size < 1)
        throw std::invalid_argument("cell_multiplicities: gamma must be nonempty");
    if (size > 63)
        throw std::length_error("cell_multiplicities: gamma too large");
    CellMultiplicities m;
    m.diagonal = std::uint64_t{1} << (size - 1);
    m.off_diagonal = size >= 2 ? std::uint64_t{1} << (size - 2) : 0;
    return m;
}

/// r(gamma) for every difference realized by the input family, with the
/// counting constraints evaluated rather than assumed: sum r = C(M,2),
/// each r <= floor(M/2), and sum 4*C(r,2) <= 3*C(M,3).
struct RepCountTable {
    std::size_t M = 0;
    std::map<GridVector, std::uint64_t> counts;
    std::uint64_t pair_total = 0;    // sum of all r(gamma)
    std::uint64_t max_count = 0;     // largest single r(gamma)
    std::uint64_t triple_lhs = 0;    // sum 4*C(r,2)
    std::uint64_t triple_rhs = 0;    // 3*C(M,3)
    bool sum_matches = false;
    bool max_bound_holds = false;
    bool triple_bound_holds = false;

    bool all_checks() const { return sum_matches && max_bound_holds && triple_bound_holds; }
};

inline std::uint64_t choose2(std::uint64_t m) { return m * (m - 1) / 2; }
inline std::uint64_t choose3(std::uint64_t m) { return m < 3 ? 0 : m * (m - 1) * (m - 2) / 6; }

inline RepCountTable representation_counts(const std::vector<GridVector>& elements,
                                           int threads = 1) {
    if (elements.empty())
        throw std::invalid_argument("representation_counts: empty element list");
    RepCountTable table;
    table.M = elements.size();
    {
        const int n = elements.front().side();
        std::unordered_set<GridVector, GridVectorHash> dedup;
        for (const GridVector& e : elements) {
            if (e.side() != n)
                throw std::invalid_argument("representation_counts: mixed grid sizes");
            if (!dedup.insert(e).second)
                throw std::invalid_argument("representation_counts: duplicate element");
        }
    }

    const std::size_t M = elements.size();
    std::vector<std::unordered_map<GridVector, std::uint64_t, GridVectorHash>> partial(
        threads < 1 ? 1 : static_cast<std::size_t>(threads));
    detail::parallel_chunks(M, threads, [&](std::size_t chunk, std::size_t begin,
                                            std::size_t end) {
        auto& local = partial[chunk];
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t j = i + 1; j < M; ++j) ++local[elements[i] ^ elements[j]];
    });
    for (auto& local : partial)
        for (auto& [gamma, r] : local) table.counts[gamma] += r;

    for (const auto& [gamma, r] : table.counts) {
        table.pair_total += r;
        if (r > table.max_count) table.max_count = r;
        table.triple_lhs += 4 * choose2(r);
    }
    table.triple_rhs = 3 * choose3(M);
    table.sum_matches = table.pair_total == choose2(M);
    table.max_bound_holds = table.max_count <= M / 2;
    table.triple_bound_holds = table.triple_lhs <= table.triple_rhs;
    return table;
}

}  // namespace qdhj
