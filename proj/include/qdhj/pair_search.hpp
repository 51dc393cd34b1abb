#pragma once

// Witness search in explicit dense subsets of {0,1}^{n^2}: the pigeonhole
// finder for rectangular difference pairs, exhaustive/sampled search for
// square pairs and oriented lines, and certificate verification.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qdhj/detail/util.hpp"
#include "qdhj/grid.hpp"

namespace qdhj {

/// Immutable set of grid words with exact membership. Small grids (n <= 5)
/// get a full-universe bit table; larger grids fall back to hashing.
class PointSet {
public:
    PointSet() : n_(0) {}
    PointSet(int n, std::vector<GridVector> members) : n_(n) {
        for (const GridVector& v : members)
            if (v.side() != n)
                throw std::invalid_argument("PointSet: member size mismatch");
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        members_ = std::move(members);
        if (use_table(n)) {
            table_.assign((universe_size() + 63) / 64, 0);
            for (const GridVector& v : members_) {
                const std::uint64_t i = v.value64();
                table_[i >> 6] |= std::uint64_t{1} << (i & 63);
            }
        } else {
            index_.reserve(members_.size() * 2);
            for (const GridVector& v : members_) index_.insert(v);
        }
    }

    static PointSet universe(int n) {
        if (n > 4)
            throw std::length_error("PointSet::universe: refusing n > 4 (2^(n^2) members)");
        std::vector<GridVector> all;
        const std::uint64_t total = std::uint64_t{1} << (n * n);
        all.reserve(total);
        for (std::uint64_t v = 0; v < total; ++v) all.push_back(GridVector::from_value64(n, v));
        return PointSet(n, std::move(all));
    }

    int side() const { return n_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<GridVector>& members() const { return members_; }

    /// |members| / 2^(n^2)
    double density() const {
        long double u = 1.0L;
        for (int i = 0; i < n_ * n_; ++i) u *= 2.0L;
        return static_cast<double>(static_cast<long double>(members_.size()) / u);
    }

    bool contains(const GridVector& v) const {
        if (v.side() != n_)
            throw std::invalid_argument("PointSet::contains: size mismatch");
        if (!table_.empty()) {
            const std::uint64_t i = v.value64();
            return (table_[i >> 6] >> (i & 63)) & 1u;
        }
        return index_.find(v) != index_.end();
    }

private:
    static bool use_table(int n) { return n <= 5; }
    std::uint64_t universe_size() const { return std::uint64_t{1} << (n_ * n_); }

    int n_;
    std::vector<GridVector> members_;
    std::vector<std::uint64_t> table_;
    std::unordered_set<GridVector, GridVectorHash> index_;
};

/// Deterministic random subset of {0,1}^{n^2} with exactly `count` members.
inline PointSet random_point_set(int n, std::uint64_t count, std::uint64_t seed) {
    if (n * n > 25)
        throw std::length_error("random_point_set: universe too large to sample from");
    const std::uint64_t universe = std::uint64_t{1} << (n * n);
    if (count > universe)
        throw std::invalid_argument("random_point_set: count exceeds universe");
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> picks = detail::sample_distinct(universe, count, rng);
    std::vector<GridVector> members;
    members.reserve(picks.size());
    for (std::uint64_t v : picks) members.push_back(GridVector::from_value64(n, v));
    return PointSet(n, std::move(members));
}

enum class CertKind { RectPair, SquarePair, Line };

inline const char* to_string(CertKind k) {
    switch (k) {
        case CertKind::RectPair: return "rect_pair";
        case CertKind::SquarePair: return "square_pair";
        case CertKind::Line: return "line";
    }
    return "rect_pair";
}

/// A verifiable witness: two set members whose difference has the recorded
/// shape. `oriented` means a is 0 and b is 1 on every wildcard cell.
struct Certificate {
    CertKind kind = CertKind::RectPair;
    GridVector a;
    GridVector b;
    Shape shape;
    bool oriented = false;
    std::string search_mode = "exhaustive";
    std::uint64_t search_seed = 0;
};

namespace detail {

inline Certificate make_certificate(CertKind kind, const GridVector& a, const GridVector& b,
                                    std::string mode, std::uint64_t seed) {
    Certificate c;
    c.kind = kind;
    c.a = a;
    c.b = b;
    const GridVector d = a ^ b;
    c.shape = classify_shape(d);
    c.oriented = !d.is_zero() && (a & d).is_zero();
    c.search_mode = std::move(mode);
    c.search_seed = seed;
    return c;
}

}  // namespace detail

/// Pigeonhole search: probe s + gamma1 x {i} for every member s and every
/// column i; either some probe lands back in S, or two probes collide on the
/// same outside word b, giving a pair with difference gamma1 x {i,j}. Always
/// succeeds when n >= ceil(1/density). Iteration is canonical (i ascending,
/// members in ascending bit order), so the result is deterministic.
inline std::optional<Certificate> find_rect_pair(const PointSet& S, const IndexSet& gamma1) {
    if (gamma1.empty())
        throw std::invalid_argument("find_rect_pair: gamma1 must be nonempty");
    const int n = S.side();
    if (gamma1.ambient() != n)
        throw std::invalid_argument("find_rect_pair: gamma1 ambient size mismatch");
    if (S.empty()) return std::nullopt;

    const bool direct = n <= 4;
    std::vector<std::uint32_t> table;  // packed (i << 24) | (member index + 1)
    std::unordered_map<GridVector, std::pair<int, std::size_t>, GridVectorHash> sparse;
    if (direct)
        table.assign(std::size_t{1} << (n * n), 0);
    else
        sparse.reserve(S.size() * static_cast<std::size_t>(n));

    const auto& members = S.members();
    for (int i = 1; i <= n; ++i) {
        const GridVector slab = product_vector(gamma1, IndexSet(n, {i}), n);
        for (std::size_t si = 0; si < members.size(); ++si) {
            const GridVector b = members[si] ^ slab;
            if (S.contains(b))
                return detail::make_certificate(CertKind::RectPair, members[si], b,
                                                "pigeonhole", 0);
            if (direct) {
                std::uint32_t& slot = table[b.value64()];
                if (slot != 0) {
                    const int j = static_cast<int>(slot >> 24);
                    if (j != i)
                        return detail::make_certificate(CertKind::RectPair, members[si],
                                                        members[(slot & 0xffffffu) - 1],
                                                        "pigeonhole", 0);
                } else {
                    slot = (static_cast<std::uint32_t>(i) << 24) |
                           static_cast<std::uint32_t>(si + 1);
                }
            } else {
                auto [it, inserted] = sparse.try_emplace(b, i, si);
                if (!inserted && it->second.first != i)
                    return detail::make_certificate(CertKind::RectPair, members[si],
                                                    members[it->second.second], "pigeonhole", 0);
            }
        }
    }
    return std::nullopt;
}

enum class SearchMode { Auto, Exhaustive, Sampled };

struct SearchOptions {
    SearchMode mode = SearchMode::Auto;
    std::uint64_t seed = 0;
    std::uint64_t budget = 1u << 20;  // probe cap in sampled mode
    int threads = 1;
};

struct SearchResult {
    std::vector<Certificate> certificates;
    bool complete = false;  // exhaustive search finished within the limit
    std::string mode;
    std::uint64_t seed = 0;
};

namespace detail {

template <typename Probe>
SearchResult square_scan(const PointSet& S, std::size_t limit, const SearchOptions& opts,
                         Probe&& probe) {
    const int n = S.side();
    SearchResult result;
    const bool exhaustive = opts.mode == SearchMode::Exhaustive ||
                            (opts.mode == SearchMode::Auto && n <= 5);
    if (exhaustive && n > 5)
        throw std::invalid_argument("square search: exhaustive mode requires n <= 5");
    result.mode = exhaustive ? "exhaustive" : "sampled";
    result.seed = exhaustive ? 0 : opts.seed;

    const std::uint64_t gamma_count = (std::uint64_t{1} << n) - 1;
    if (exhaustive) {
        const auto& members = S.members();
        std::vector<std::vector<Certificate>> found(gamma_count);
        detail::parallel_chunks(gamma_count, opts.threads,
                                [&](std::size_t, std::size_t begin, std::size_t end) {
            for (std::size_t g = begin; g < end; ++g) {
                const IndexSet gamma = IndexSet::from_mask(n, g + 1);
                const GridVector square = product_vector(gamma, gamma, n);
                for (const GridVector& s : members) {
                    if (auto cert = probe(s, square, "exhaustive", std::uint64_t{0}))
                        found[g].push_back(std::move(*cert));
                }
            }
        });
        std::size_t total = 0;
        for (const auto& per_gamma : found) total += per_gamma.size();
        result.complete = total <= limit;
        for (const auto& per_gamma : found)
            for (const Certificate& c : per_gamma) {
                if (result.certificates.size() >= limit) return result;
                result.certificates.push_back(c);
            }
        return result;
    }

    // sampled: seeded probe schedule, flagged incomplete
    std::mt19937_64 rng(opts.seed);
    std::map<std::pair<std::uint64_t, GridVector>, Certificate> seen;
    const auto& members = S.members();
    for (std::uint64_t t = 0; t < opts.budget && !members.empty(); ++t) {
        if (seen.size() >= limit) break;
        const std::uint64_t g = 1 + detail::bounded(rng, gamma_count);
        const GridVector& s = members[detail::bounded(rng, members.size())];
        const IndexSet gamma = IndexSet::from_mask(n, g);
        const GridVector square = product_vector(gamma, gamma, n);
        if (auto cert = probe(s, square, "sampled", opts.seed))
            seen.emplace(std::make_pair(g, std::min(cert->a, cert->b)), std::move(*cert));
    }
    result.complete = false;
    for (auto& [key, cert] : seen) result.certificates.push_back(std::move(cert));
    return result;
}

}  // namespace detail

/// All pairs {a,b} of S whose difference is an exact square gamma x gamma,
/// listed per ascending gamma then ascending smaller endpoint, up to `limit`.
inline SearchResult find_square_pairs(const PointSet& S, std::size_t limit,
                                      const SearchOptions& opts = {}) {
    return detail::square_scan(
        S, limit, opts,
        [&S](const GridVector& s, const GridVector& square, const char* mode,
             std::uint64_t seed) -> std::optional<Certificate> {
            const GridVector b = s ^ square;
            if (s < b && S.contains(b))
                return detail::make_certificate(CertKind::SquarePair, s, b, mode, seed);
            return std::nullopt;
        });
}

/// The oriented subset of find_square_pairs: a carries 0 on every wildcard
/// cell and b carries 1 there, so {a,b} is a combinatorial line.
inline SearchResult find_line(const PointSet& S, std::size_t limit,
                              const SearchOptions& opts = {}) {
    return detail::square_scan(
        S, limit, opts,
        [&S](const GridVector& s, const GridVector& square, const char* mode,
             std::uint64_t seed) -> std::optional<Certificate> {
            if (!(s & square).is_zero()) return std::nullopt;
            const GridVector b = s ^ square;
            if (S.contains(b))
                return detail::make_certificate(CertKind::Line, s, b, mode, seed);
            return std::nullopt;
        });
}

/// Recomputes every recorded fact of the certificate against S; any
/// mismatch (membership, shape, orientation, kind consistency) is false.
inline bool verify_certificate(const Certificate& cert, const PointSet& S) {
    if (cert.a.side() != S.side() || cert.b.side() != S.side()) return false;
    if (!S.contains(cert.a) || !S.contains(cert.b)) return false;
    const GridVector d = cert.a ^ cert.b;
    if (d.is_zero()) return false;
    const Shape actual = classify_shape(d);
    if (!(actual == cert.shape)) return false;
    const bool oriented = (cert.a & d).is_zero();
    if (oriented != cert.oriented) return false;
    switch (cert.kind) {
        case CertKind::Line:
            return cert.oriented && actual.kind == ShapeKind::Square;
        case CertKind::SquarePair:
            return actual.kind == ShapeKind::Square;
        case CertKind::RectPair:
            return actual.kind == ShapeKind::Square || actual.kind == ShapeKind::Rect;
    }
    return false;
}

}  // namespace qdhj
