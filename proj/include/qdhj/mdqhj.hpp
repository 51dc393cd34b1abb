#pragma once

// General-alphabet machinery: k-ary strings over a coordinate domain, slice
// decomposition across an exact bipartition, good-string extraction, the
// (k+d-1)^(m^2) subspace-count bound, and square-wildcard combinatorial
// subspaces (instantiation, product composition, containment checks).

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "qdhj/detail/util.hpp"
#include "qdhj/grid.hpp"
#include "qdhj/pair_search.hpp"

namespace qdhj {

/// Word over {0,…,k−1}^D for an ordered coordinate domain of size D.
/// When D is a perfect square the cells are read as an N×N grid in the
/// same row-major order as GridVector.
class KString {
public:
    KString() : k_(2) {}
    KString(int k, std::vector<std::uint8_t> letters) : k_(k), letters_(std::move(letters)) {
        if (k < 2 || k > 255)
            throw std::invalid_argument("KString: alphabet size must be in [2,255]");
        for (std::uint8_t c : letters_)
            if (c >= k)
                throw std::invalid_argument("KString: letter out of alphabet range");
    }

    static KString zeros(int k, std::size_t size) {
        return KString(k, std::vector<std::uint8_t>(size, 0));
    }

    int alphabet() const { return k_; }
    std::size_t size() const { return letters_.size(); }
    const std::vector<std::uint8_t>& letters() const { return letters_; }

    int at(std::size_t i) const {
        if (i >= letters_.size()) throw std::out_of_range("KString::at: bad coordinate");
        return letters_[i];
    }
    void set_letter(std::size_t i, int v) {
        if (i >= letters_.size()) throw std::out_of_range("KString::set_letter: bad coordinate");
        if (v < 0 || v >= k_)
            throw std::invalid_argument("KString::set_letter: letter out of range");
        letters_[i] = static_cast<std::uint8_t>(v);
    }

    friend bool operator==(const KString& a, const KString& b) {
        return a.k_ == b.k_ && a.letters_ == b.letters_;
    }
    friend bool operator!=(const KString& a, const KString& b) { return !(a == b); }
    friend bool operator<(const KString& a, const KString& b) {
        if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
        if (a.letters_ != b.letters_) return a.letters_ < b.letters_;
        return a.k_ < b.k_;
    }

private:
    int k_;
    std::vector<std::uint8_t> letters_;
};

struct KStringHash {
    std::size_t operator()(const KString& s) const {
        std::uint64_t h = 14695981039346656037ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(static_cast<std::uint64_t>(s.alphabet()));
        for (std::uint8_t c : s.letters()) mix(c);
        return static_cast<std::size_t>(h);
    }
};

/// N lines of N digits; requires a square domain and k <= 10.
inline std::string format_kstring(const KString& s) {
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(double(s.size()))));
    if (side * side != s.size())
        throw std::invalid_argument("format_kstring: domain is not a square grid");
    if (s.alphabet() > 10)
        throw std::invalid_argument("format_kstring: alphabet too large for digit format");
    std::string out;
    out.reserve(s.size() + side);
    for (std::size_t x = 0; x < side; ++x) {
        for (std::size_t y = 0; y < side; ++y)
            out.push_back(static_cast<char>('0' + s.at(x * side + y)));
        out.push_back('\n');
    }
    return out;
}

inline KString parse_kstring(int k, const std::string& text) {
    if (k < 2 || k > 10) throw std::invalid_argument("parse_kstring: k must be in [2,10]");
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) lines.push_back(current);
    if (lines.empty() || lines[0].empty()) throw ParseError(1, 1, "empty input");
    const std::size_t side = lines[0].size();
    if (lines.size() != side)
        throw ParseError(lines.size(), 1, "expected as many rows as columns");
    std::vector<std::uint8_t> letters;
    letters.reserve(side * side);
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (lines[r].size() != side) throw ParseError(r + 1, lines[r].size() + 1, "ragged row");
        for (std::size_t c = 0; c < side; ++c) {
            const char ch = lines[r][c];
            if (ch < '0' || ch >= '0' + k)
                throw ParseError(r + 1, c + 1, "letter outside alphabet");
            letters.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
    }
    return KString(k, std::move(letters));
}

inline KString kstring_from_grid(const GridVector& v) {
    const int n = v.side();
    std::vector<std::uint8_t> letters(static_cast<std::size_t>(n) * n, 0);
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y)
            if (v.test(x, y)) letters[static_cast<std::size_t>(x - 1) * n + (y - 1)] = 1;
    return KString(2, std::move(letters));
}

inline GridVector grid_from_kstring(const KString& s) {
    if (s.alphabet() != 2)
        throw std::invalid_argument("grid_from_kstring: alphabet must be binary");
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(double(s.size()))));
    if (side * side != s.size())
        throw std::invalid_argument("grid_from_kstring: domain is not a square grid");
    GridVector v(static_cast<int>(side));
    for (std::size_t x = 1; x <= side; ++x)
        for (std::size_t y = 1; y <= side; ++y)
            if (s.at((x - 1) * side + (y - 1)))
                v.set(static_cast<int>(x), static_cast<int>(y), true);
    return v;
}

/// Coordinate subsets are sorted lists of 0-based domain indices.
using CellSet = std::vector<std::size_t>;

/// Upper-left m×m block of an N×N grid, as domain indices.
inline CellSet block_cells(int N, int m) {
    if (m < 0 || m > N) throw std::invalid_argument("block_cells: m must be in [0,N]");
    CellSet cells;
    cells.reserve(static_cast<std::size_t>(m) * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            cells.push_back(static_cast<std::size_t>(x) * N + y);
    return cells;
}

inline CellSet complement_cells(const CellSet& P, std::size_t domain_size) {
    CellSet out;
    out.reserve(domain_size - P.size());
    std::size_t at = 0;
    for (std::size_t i = 0; i < domain_size; ++i) {
        if (at < P.size() && P[at] == i)
            ++at;
        else
            out.push_back(i);
    }
    return out;
}

inline KString restrict_to(const KString& s, const CellSet& coords) {
    std::vector<std::uint8_t> letters;
    letters.reserve(coords.size());
    for (std::size_t c : coords) letters.push_back(static_cast<std::uint8_t>(s.at(c)));
    return KString(s.alphabet(), std::move(letters));
}

/// Per-slice member counts of E grouped by the Q-restriction, for an exact
/// bipartition (P, Q) of the domain. Densities are counts over k^|P|.
struct SliceTable {
    int k = 2;
    std::size_t domain_size = 0;
    CellSet p_coords;
    CellSet q_coords;
    std::map<KString, std::uint64_t> rows;
    std::uint64_t total = 0;

    double slice_density(std::uint64_t count) const {
        return static_cast<double>(static_cast<long double>(count) /
                                   std::pow(static_cast<long double>(k),
                                            static_cast<long double>(p_coords.size())));
    }
};

namespace detail {

inline void check_cellset(const CellSet& P, std::size_t domain_size, const char* who) {
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (P[i] >= domain_size) throw std::invalid_argument(std::string(who) + ": cell out of domain");
        if (i > 0 && P[i] <= P[i - 1])
            throw std::invalid_argument(std::string(who) + ": cells must be strictly increasing");
    }
}

}  // namespace detail

/// Groups E by restriction to the complement of P. Duplicate inputs collapse
/// (E is a set). Mass is conserved: sum of row counts == number of distinct
/// members.
inline SliceTable slice_decompose(const std::vector<KString>& E, const CellSet& P,
                                  std::size_t domain_size, int k, int threads = 1) {
    detail::check_cellset(P, domain_size, "slice_decompose");
    for (const KString& z : E) {
        if (z.size() != domain_size)
            throw std::invalid_argument("slice_decompose: member domain size mismatch");
        if (z.alphabet() != k)
            throw std::invalid_argument("slice_decompose: member alphabet mismatch");
    }
    SliceTable table;
    table.k = k;
    table.domain_size = domain_size;
    table.p_coords = P;
    table.q_coords = complement_cells(P, domain_size);

    std::vector<KString> distinct(E);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<std::map<KString, std::uint64_t>> partial(
        threads < 1 ? 1 : static_cast<std::size_t>(threads));
    detail::parallel_chunks(distinct.size(), threads,
                            [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& local = partial[chunk];
        for (std::size_t i = begin; i < end; ++i)
            ++local[restrict_to(distinct[i], table.q_coords)];
    });
    for (auto& local : partial)
        for (auto& [zq, count] : local) table.rows[zq] += count;
    table.total = distinct.size();
    return table;
}

/// Q-strings whose slice density reaches eps/2. If E itself has density at
/// least eps over the whole domain, at least an eps/2 fraction of all k^|Q|
/// strings come back — that is the counting lemma this feeds.
inline std::vector<KString> good_strings(const SliceTable& table, double eps) {
    if (!(eps > 0.0) || eps > 1.0)
        throw std::invalid_argument("good_strings: eps must lie in (0,1]");
    const long double cutoff =
        static_cast<long double>(eps) / 2.0L *
        std::pow(static_cast<long double>(table.k), static_cast<long double>(table.p_coords.size()));
    std::vector<KString> good;
    for (const auto& [zq, count] : table.rows)
        if (static_cast<long double>(count) >= cutoff) good.push_back(zq);
    return good;
}

/// (k+d−1)^(m²), the crude count bound on d-dimensional square-wildcard
/// subspaces of an m×m block.
inline mpz_class subspace_count_bound(int m, int k, int d) {
    if (m < 1 || k < 2 || d < 1)
        throw std::invalid_argument("subspace_count_bound: need m >= 1, k >= 2, d >= 1");
    mpz_class base = k + d - 1;
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(),
               static_cast<unsigned long>(m) * static_cast<unsigned long>(m));
    return out;
}

/// d-dimensional combinatorial subspace of {0,…,k−1}^(N²) whose wildcard
/// sets are the squares alpha_i × alpha_i, pairwise disjoint. Base letters
/// under a wildcard are canonically 0.
struct CombSubspaceSpec {
    int k = 2;
    int N = 0;
    KString base;
    std::vector<IndexSet> alphas;

    std::size_t dimension() const { return alphas.size(); }
};

inline bool validate_spec(const CombSubspaceSpec& spec) {
    if (spec.k < 2 || spec.N < 1) return false;
    if (spec.base.alphabet() != spec.k) return false;
    if (spec.base.size() != static_cast<std::size_t>(spec.N) * spec.N) return false;
    for (std::size_t i = 0; i < spec.alphas.size(); ++i) {
        if (spec.alphas[i].ambient() != spec.N || spec.alphas[i].empty()) return false;
        for (std::size_t j = i + 1; j < spec.alphas.size(); ++j)
            if (!disjoint(spec.alphas[i], spec.alphas[j])) return false;
    }
    for (const IndexSet& alpha : spec.alphas)
        for (int x : alpha.members())
            for (int y : alpha.members())
                if (spec.base.at(static_cast<std::size_t>(x - 1) * spec.N + (y - 1)) != 0)
                    return false;
    return true;
}

/// Rewrites base letters under every wildcard square to 0.
inline CombSubspaceSpec canonicalize_spec(CombSubspaceSpec spec) {
    for (const IndexSet& alpha : spec.alphas)
        for (int x : alpha.members())
            for (int y : alpha.members())
                spec.base.set_letter(static_cast<std::size_t>(x - 1) * spec.N + (y - 1), 0);
    return spec;
}

/// The instantiation at one letter vector (x_1,…,x_d).
inline KString instantiate(const CombSubspaceSpec& spec, const std::vector<int>& letters) {
    if (letters.size() != spec.alphas.size())
        throw std::invalid_argument("instantiate: need one letter per wildcard");
    KString out = spec.base;
    for (std::size_t t = 0; t < letters.size(); ++t)
        for (int x : spec.alphas[t].members())
            for (int y : spec.alphas[t].members())
                out.set_letter(static_cast<std::size_t>(x - 1) * spec.N + (y - 1), letters[t]);
    return out;
}

/// All k^d instantiations, ordered by the letter vector (last wildcard
/// varies fastest).
inline std::vector<KString> instantiations(const CombSubspaceSpec& spec) {
    const std::size_t d = spec.alphas.size();
    long double total_ld = std::pow(static_cast<long double>(spec.k), static_cast<long double>(d));
    if (total_ld > static_cast<long double>(1u << 22))
        throw std::length_error("instantiations: k^d too large to expand");
    const std::uint64_t total = static_cast<std::uint64_t>(total_ld + 0.5L);
    std::vector<KString> out;
    out.reserve(total);
    std::vector<int> letters(d, 0);
    for (std::uint64_t step = 0;; ++step) {
        out.push_back(instantiate(spec, letters));
        std::size_t t = d;
        while (t > 0) {
            --t;
            if (++letters[t] < spec.k) break;
            letters[t] = 0;
            if (t == 0) return out;
        }
        if (d == 0) return out;
    }
}

/// Concatenates a spec over cells P with a spec over the complementary
/// cells: base letters come from sigma on P and lambda elsewhere, wildcard
/// lists append. Overlapping wildcard indices are a caller error.
inline CombSubspaceSpec subspace_product(const CombSubspaceSpec& sigma,
                                         const CombSubspaceSpec& lambda,
                                         const CellSet& sigma_cells) {
    if (sigma.k != lambda.k || sigma.N != lambda.N)
        throw std::invalid_argument("subspace_product: mismatched k or N");
    detail::check_cellset(sigma_cells, static_cast<std::size_t>(sigma.N) * sigma.N,
                          "subspace_product");
    for (const IndexSet& a : sigma.alphas)
        for (const IndexSet& b : lambda.alphas)
            if (!disjoint(a, b))
                throw std::invalid_argument("subspace_product: wildcard index sets overlap");
    CombSubspaceSpec out;
    out.k = sigma.k;
    out.N = sigma.N;
    out.base = lambda.base;
    for (std::size_t c : sigma_cells) out.base.set_letter(c, sigma.base.at(c));
    out.alphas = sigma.alphas;
    out.alphas.insert(out.alphas.end(), lambda.alphas.begin(), lambda.alphas.end());
    out = canonicalize_spec(std::move(out));
    if (!validate_spec(out))
        throw std::invalid_argument("subspace_product: result violates spec invariants");
    return out;
}

/// Expands every instantiation and checks membership in E; also re-checks
/// the spec invariants. Any failure is a false verdict, never an exception.
inline bool verify_subspace_in_set(const std::vector<KString>& E, const CombSubspaceSpec& spec,
                                   int threads = 1) {
    if (!validate_spec(spec)) return false;
    std::unordered_set<KString, KStringHash> index(E.begin(), E.end());
    std::vector<KString> points;
    try {
        points = instantiations(spec);
    } catch (const std::length_error&) {
        return false;
    }
    std::vector<std::uint8_t> ok(threads < 1 ? 1 : static_cast<std::size_t>(threads), 1);
    detail::parallel_chunks(points.size(), threads,
                            [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            if (index.find(points[i]) == index.end()) {
                ok[chunk] = 0;
                return;
            }
    });
    for (std::uint8_t flag : ok)
        if (!flag) return false;
    return true;
}

/// A line certificate over {0,1}^(n²) is exactly a 1-dimensional
/// square-wildcard subspace; rejects non-line or unoriented certificates.
inline CombSubspaceSpec line_to_subspace_spec(const Certificate& cert) {
    if (cert.kind != CertKind::Line || cert.shape.kind != ShapeKind::Square || !cert.oriented)
        throw std::invalid_argument("line_to_subspace_spec: certificate is not an oriented line");
    CombSubspaceSpec spec;
    spec.k = 2;
    spec.N = cert.a.side();
    spec.base = kstring_from_grid(cert.a);
    spec.alphas = {cert.shape.gamma1};
    spec = canonicalize_spec(std::move(spec));
    if (!validate_spec(spec))
        throw std::invalid_argument("line_to_subspace_spec: certificate is inconsistent");
    return spec;
}

/// Every k-ary string over a domain of `size` cells, in ascending order.
inline std::vector<KString> kstring_universe(int k, std::size_t size) {
    long double total_ld = std::pow(static_cast<long double>(k), static_cast<long double>(size));
    if (total_ld > static_cast<long double>(1u << 22))
        throw std::length_error("kstring_universe: k^size too large to expand");
    const std::uint64_t total = static_cast<std::uint64_t>(total_ld + 0.5L);
    std::vector<KString> out;
    out.reserve(total);
    std::vector<std::uint8_t> letters(size, 0);
    for (std::uint64_t v = 0;; ++v) {
        out.push_back(KString(k, letters));
        std::size_t t = size;
        while (t > 0) {
            --t;
            if (++letters[t] < k) break;
            letters[t] = 0;
            if (t == 0) return out;
        }
        if (size == 0) return out;
    }
}

}  // namespace qdhj
