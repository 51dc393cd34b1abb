#pragma once

// GF(2) linear algebra over GridVectors: row reduction, rank, membership,
// Gray-code span enumeration, and the density-1/4 spiral subspace whose
// combinatorial lines can only carry square wildcards of size 0 mod 4.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdhj/grid.hpp"

namespace qdhj {

namespace detail {

inline int lowest_set_bit(const GridVector& v) {
    const auto& w = v.words();
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0) return static_cast<int>(i * 64) + std::countr_zero(w[i]);
    return -1;
}

}  // namespace detail

/// Reduced echelon basis for the span of a list of GridVectors. Pivot bits
/// are ascending cell indices; reduced rows are fully back-eliminated, so
/// membership needs a single pass.
struct Basis {
    int n = 0;
    std::vector<GridVector> elements;  // as given
    std::vector<GridVector> reduced;   // RREF rows, ascending pivot
    std::vector<int> pivots;           // cell bit index per reduced row

    int rank() const { return static_cast<int>(reduced.size()); }

    bool independent_input() const {
        return elements.size() == reduced.size();
    }

    /// Residual of v after eliminating along the reduced rows.
    GridVector residual(GridVector v) const {
        for (std::size_t i = 0; i < reduced.size(); ++i) {
            const int p = pivots[i];
            if ((v.words()[static_cast<std::size_t>(p) >> 6] >> (p & 63)) & 1u)
                v ^= reduced[i];
        }
        return v;
    }

    bool contains(const GridVector& v) const {
        if (v.side() != n)
            throw std::invalid_argument("Basis::contains: size mismatch");
        return residual(v).is_zero();
    }
};

inline Basis row_reduce(const std::vector<GridVector>& elements) {
    if (elements.empty())
        throw std::invalid_argument("row_reduce: empty element list");
    const int n = elements[0].side();
    Basis b;
    b.n = n;
    b.elements = elements;
    for (const GridVector& e : elements) {
        if (e.side() != n)
            throw std::invalid_argument("row_reduce: mixed grid sizes");
        GridVector r = b.residual(e);
        const int p = detail::lowest_set_bit(r);
        if (p < 0) continue;
        // back-eliminate the new pivot from existing rows
        for (std::size_t i = 0; i < b.reduced.size(); ++i)
            if ((b.reduced[i].words()[static_cast<std::size_t>(p) >> 6] >> (p & 63)) & 1u)
                b.reduced[i] ^= r;
        std::size_t pos = 0;
        while (pos < b.pivots.size() && b.pivots[pos] < p) ++pos;
        b.reduced.insert(b.reduced.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
        b.pivots.insert(b.pivots.begin() + static_cast<std::ptrdiff_t>(pos), p);
    }
    return b;
}

enum class MembershipMode { RowReduce, ParityKernel };

inline const char* to_string(MembershipMode m) {
    return m == MembershipMode::ParityKernel ? "parity_kernel" : "row_reduce";
}

/// A subspace with a membership strategy. ParityKernel answers membership by
/// checking that the mod-2 sum over each functional's cell set vanishes;
/// construction validates that this agrees with row reduction.
class SubspaceHandle {
public:
    SubspaceHandle(Basis basis, MembershipMode mode, std::vector<GridVector> functionals = {})
        : basis_(std::move(basis)), mode_(mode), functionals_(std::move(functionals)) {
        if (mode_ == MembershipMode::ParityKernel) validate_kernel();
    }

    int side() const { return basis_.n; }
    int rank() const { return basis_.rank(); }
    const Basis& basis() const { return basis_; }
    MembershipMode membership_mode() const { return mode_; }
    const std::vector<GridVector>& parity_functionals() const { return functionals_; }

    bool contains(const GridVector& v) const {
        if (v.side() != basis_.n)
            throw std::invalid_argument("SubspaceHandle::contains: size mismatch");
        if (mode_ == MembershipMode::ParityKernel) {
            for (const GridVector& f : functionals_)
                if ((v & f).popcount() % 2 != 0) return false;
            return true;
        }
        return basis_.contains(v);
    }

    bool contains_by_row_reduce(const GridVector& v) const { return basis_.contains(v); }

private:
    // span(basis) is contained in the kernel of every functional, and the
    // functional count matches the codimension, so span = kernel.
    void validate_kernel() const {
        const int cells = basis_.n * basis_.n;
        if (functionals_.empty())
            throw std::logic_error("SubspaceHandle: parity mode without functionals");
        Basis frank = row_reduce(functionals_);
        if (frank.rank() != static_cast<int>(functionals_.size()))
            throw std::logic_error("SubspaceHandle: parity functionals are dependent");
        if (basis_.rank() + static_cast<int>(functionals_.size()) != cells)
            throw std::logic_error("SubspaceHandle: rank does not match functional count");
        for (const GridVector& e : basis_.reduced)
            for (const GridVector& f : functionals_)
                if ((e & f).popcount() % 2 != 0)
                    throw std::logic_error("SubspaceHandle: basis element escapes the kernel");
    }

    Basis basis_;
    MembershipMode mode_;
    std::vector<GridVector> functionals_;
};

/// The spiral basis: all strictly-lower singletons,
/// consecutive diagonal dominoes, diagonal steps in the strict upper
/// triangle, and n-2 boundary pairs along column n / row 1 tying the upper
/// diagonals together. Exactly n^2 - 2 independent vectors; every element
/// has an even number of diagonal cells and an even number of strictly-upper
/// cells, so the span is the kernel of those two parity functionals.
inline SubspaceHandle spiral_basis(int n) {
    if (n < 2)
        throw std::invalid_argument("spiral_basis: requires n >= 2");
    std::vector<GridVector> elems;
    elems.reserve(static_cast<std::size_t>(n) * n - 2);
    // singletons on the strictly lower triangle
    for (int x = 2; x <= n; ++x)
        for (int y = 1; y < x; ++y)
            elems.push_back(GridVector(n, {{x, y}}));
    // dominoes of consecutive diagonal cells
    for (int t = 1; t < n; ++t)
        elems.push_back(GridVector(n, {{t, t}, {t + 1, t + 1}}));
    // diagonal steps inside the strict upper triangle
    for (int x = 1; x <= n - 1; ++x)
        for (int y = x + 1; y <= n - 1; ++y)
            elems.push_back(GridVector(n, {{x, y}, {x + 1, y + 1}}));
    // boundary chain: column n pairs for x = n-2, n-4, ...
    for (int x = n - 2; x >= 1; x -= 2)
        elems.push_back(GridVector(n, {{x, n}, {x + 1, n}}));
    // boundary chain: row 1 pairs for y = 3, 5, ...
    for (int y = 3; y + 1 <= n; y += 2)
        elems.push_back(GridVector(n, {{1, y}, {1, y + 1}}));

    const int expected = n * n - 2;
    if (static_cast<int>(elems.size()) != expected)
        throw std::logic_error("spiral_basis: built " + std::to_string(elems.size()) +
                               " elements, expected " + std::to_string(expected));

    GridVector diag(n), upper(n);
    for (int t = 1; t <= n; ++t) diag.set(t, t);
    for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y) upper.set(x, y);

    for (const GridVector& e : elems) {
        if ((e & diag).popcount() % 2 != 0 || (e & upper).popcount() % 2 != 0)
            throw std::logic_error("spiral_basis: basis element violates parity");
    }

    Basis b = row_reduce(elems);
    if (b.rank() != expected)
        throw std::logic_error("spiral_basis: rank " + std::to_string(b.rank()) +
                               ", expected " + std::to_string(expected));
    return SubspaceHandle(std::move(b), MembershipMode::ParityKernel, {diag, upper});
}

/// Constant-time membership for spiral subspaces: even number of diagonal
/// cells and even number of strictly-upper cells.
inline bool parity_membership(const SubspaceHandle& handle, const GridVector& v) {
    if (handle.membership_mode() != MembershipMode::ParityKernel)
        throw std::invalid_argument("parity_membership: handle has no parity functionals");
    if (v.side() != handle.side())
        throw std::invalid_argument("parity_membership: size mismatch");
    for (const GridVector& f : handle.parity_functionals())
        if ((v & f).popcount() % 2 != 0) return false;
    return true;
}

inline constexpr int kSpanEnumerationMaxRank = 30;

/// Streams all 2^rank span elements exactly once in Gray-code order: each
/// element differs from its predecessor by a single reduced-basis vector.
class SpanRange {
public:
    explicit SpanRange(const Basis& basis) : basis_(&basis) {
        if (basis.rank() > kSpanEnumerationMaxRank)
            throw std::length_error(
                "span enumeration refused: rank " + std::to_string(basis.rank()) +
                " exceeds the limit of " + std::to_string(kSpanEnumerationMaxRank));
        total_ = std::uint64_t{1} << basis.rank();
    }

    class iterator {
    public:
        using value_type = GridVector;

        iterator() = default;
        iterator(const Basis* basis, std::uint64_t total)
            : basis_(basis), total_(total), current_(basis->n) {}

        const GridVector& operator*() const { return current_; }

        iterator& operator++() {
            ++index_;
            if (index_ < total_) {
                // Gray step: bit that changes between gray(i-1) and gray(i)
                const int b = std::countr_zero(index_);
                current_ ^= basis_->reduced[static_cast<std::size_t>(b)];
            }
            return *this;
        }

        bool at_end() const { return basis_ == nullptr || index_ >= total_; }

        friend bool operator==(const iterator& a, const iterator& b) {
            return a.at_end() == b.at_end() && (a.at_end() || a.index_ == b.index_);
        }

    private:
        const Basis* basis_ = nullptr;
        std::uint64_t total_ = 0;
        std::uint64_t index_ = 0;
        GridVector current_;
    };

    iterator begin() const { return iterator(basis_, total_); }
    iterator end() const { return iterator(); }
    std::uint64_t size() const { return total_; }

private:
    const Basis* basis_;
    std::uint64_t total_;
};

inline SpanRange span_enumerate(const SubspaceHandle& handle) {
    return SpanRange(handle.basis());
}

inline std::vector<GridVector> span_vector(const Basis& basis) {
    SpanRange range(basis);
    std::vector<GridVector> out;
    out.reserve(static_cast<std::size_t>(range.size()));
    for (auto it = range.begin(); !it.at_end(); ++it) out.push_back(*it);
    return out;
}

inline std::vector<GridVector> span_vector(const SubspaceHandle& handle) {
    return span_vector(handle.basis());
}

/// Membership in the index-2 subspace of even-popcount vectors.
inline bool even_weight_membership(const GridVector& v) {
    return v.popcount() % 2 == 0;
}

}  // namespace qdhj
