#pragma once

// Elements of F_2^{n^2} viewed as n x n 0/1 grids, plus the shape
// classification of difference sets (Zero / Square / Rect / Other).

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdhj {

/// Subset of {1,...,n}, n <= 64. Holds the wildcard index sets gamma.
class IndexSet {
public:
    IndexSet() = default;

    explicit IndexSet(int n) : n_(check_n(n)) {}

    IndexSet(int n, std::initializer_list<int> members) : n_(check_n(n)) {
        for (int i : members) add(i);
    }

    IndexSet(int n, const std::vector<int>& members) : n_(check_n(n)) {
        for (int i : members) add(i);
    }

    static IndexSet from_mask(int n, std::uint64_t mask) {
        IndexSet s(n);
        if (n < 64 && (mask >> n) != 0)
            throw std::invalid_argument("IndexSet: mask exceeds ambient size");
        s.mask_ = mask;
        return s;
    }

    static IndexSet full(int n) {
        IndexSet s(n);
        s.mask_ = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
        return s;
    }

    int ambient() const { return n_; }
    std::uint64_t mask() const { return mask_; }
    int size() const { return std::popcount(mask_); }
    bool empty() const { return mask_ == 0; }

    bool contains(int i) const {
        return i >= 1 && i <= n_ && (mask_ >> (i - 1)) & 1u;
    }

    void add(int i) {
        if (i < 1 || i > n_)
            throw std::invalid_argument("IndexSet: member " + std::to_string(i) +
                                        " outside {1,...," + std::to_string(n_) + "}");
        mask_ |= std::uint64_t{1} << (i - 1);
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint64_t m = mask_; m != 0; m &= m - 1)
            out.push_back(std::countr_zero(m) + 1);
        return out;
    }

    friend bool operator==(const IndexSet& a, const IndexSet& b) {
        return a.n_ == b.n_ && a.mask_ == b.mask_;
    }

    friend bool disjoint(const IndexSet& a, const IndexSet& b) {
        return (a.mask_ & b.mask_) == 0;
    }

private:
    static int check_n(int n) {
        if (n < 0 || n > 64)
            throw std::invalid_argument("IndexSet: ambient size must be in [0,64]");
        return n;
    }

    int n_ = 0;
    std::uint64_t mask_ = 0;
};

/// Element of F_2^{n^2}. Cell (x,y) with x,y in [1,n] lives at bit
/// (x-1)*n + (y-1); x grows downwards, y grows rightwards.
class GridVector {
public:
    GridVector() = default;

    explicit GridVector(int n) : n_(check_side(n)), words_(word_count(n), 0) {}

    GridVector(int n, std::initializer_list<std::pair<int, int>> cells) : GridVector(n) {
        for (auto [x, y] : cells) set(x, y);
    }

    int side() const { return n_; }
    int bit_size() const { return n_ * n_; }

    bool test(int x, int y) const {
        const int i = cell_index(x, y);
        return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
    }

    void set(int x, int y, bool value = true) {
        const int i = cell_index(x, y);
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (value)
            words_[static_cast<std::size_t>(i) >> 6] |= bit;
        else
            words_[static_cast<std::size_t>(i) >> 6] &= ~bit;
    }

    int popcount() const {
        int c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    bool is_zero() const {
        for (std::uint64_t w : words_)
            if (w != 0) return false;
        return true;
    }

    /// The grid as an integer index into the universe; requires n <= 8.
    std::uint64_t value64() const {
        if (bit_size() > 64)
            throw std::length_error("GridVector::value64: grid exceeds 64 cells");
        return words_.empty() ? 0 : words_[0];
    }

    static GridVector from_value64(int n, std::uint64_t value) {
        GridVector v(n);
        if (v.bit_size() > 64)
            throw std::length_error("GridVector::from_value64: grid exceeds 64 cells");
        if (v.bit_size() < 64 && (value >> v.bit_size()) != 0)
            throw std::invalid_argument("GridVector::from_value64: value out of range");
        if (!v.words_.empty()) v.words_[0] = value;
        return v;
    }

    GridVector& operator^=(const GridVector& rhs) {
        require_same_side(rhs);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= rhs.words_[i];
        return *this;
    }

    GridVector& operator&=(const GridVector& rhs) {
        require_same_side(rhs);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= rhs.words_[i];
        return *this;
    }

    friend GridVector operator^(GridVector a, const GridVector& b) { return a ^= b; }
    friend GridVector operator&(GridVector a, const GridVector& b) { return a &= b; }

    friend bool operator==(const GridVector& a, const GridVector& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

    /// Canonical order: numeric value of the bit string, word 0 least significant.
    friend bool operator<(const GridVector& a, const GridVector& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (std::size_t i = a.words_.size(); i-- > 0;)
            if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
        return false;
    }

    /// Rows x with at least one set cell.
    IndexSet row_support() const {
        IndexSet rows(n_);
        for (int x = 1; x <= n_; ++x)
            for (int y = 1; y <= n_; ++y)
                if (test(x, y)) { rows.add(x); break; }
        return rows;
    }

    /// Columns y with at least one set cell.
    IndexSet col_support() const {
        IndexSet cols(n_);
        for (int y = 1; y <= n_; ++y)
            for (int x = 1; x <= n_; ++x)
                if (test(x, y)) { cols.add(y); break; }
        return cols;
    }

    std::size_t hash() const {
        std::uint64_t h = 14695981039346656037ull;
        h = (h ^ static_cast<std::uint64_t>(n_)) * 1099511628211ull;
        for (std::uint64_t w : words_) h = (h ^ w) * 1099511628211ull;
        return static_cast<std::size_t>(h);
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    static int check_side(int n) {
        if (n < 1)
            throw std::invalid_argument("GridVector: side length must be positive");
        return n;
    }

    static std::size_t word_count(int n) {
        return (static_cast<std::size_t>(n) * n + 63) / 64;
    }

    int cell_index(int x, int y) const {
        if (x < 1 || x > n_ || y < 1 || y > n_)
            throw std::out_of_range("GridVector: cell (" + std::to_string(x) + "," +
                                    std::to_string(y) + ") outside [1," +
                                    std::to_string(n_) + "]^2");
        return (x - 1) * n_ + (y - 1);
    }

    void require_same_side(const GridVector& rhs) const {
        if (n_ != rhs.n_)
            throw std::invalid_argument("GridVector: size mismatch (" + std::to_string(n_) +
                                        " vs " + std::to_string(rhs.n_) + ")");
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct GridVectorHash {
    std::size_t operator()(const GridVector& v) const { return v.hash(); }
};

/// F_2 addition (symmetric difference of supports).
inline GridVector xor_add(const GridVector& a, const GridVector& b) { return a ^ b; }

/// Indicator of gamma1 x gamma2 inside the n x n grid.
inline GridVector product_vector(const IndexSet& gamma1, const IndexSet& gamma2, int n) {
    if (gamma1.ambient() != n || gamma2.ambient() != n)
        throw std::invalid_argument("product_vector: index sets must live in {1,...,n}");
    GridVector v(n);
    for (int x : gamma1.members())
        for (int y : gamma2.members())
            v.set(x, y);
    return v;
}

enum class ShapeKind { Zero, Square, Rect, Other };

inline const char* to_string(ShapeKind k) {
    switch (k) {
        case ShapeKind::Zero: return "zero";
        case ShapeKind::Square: return "square";
        case ShapeKind::Rect: return "rect";
        case ShapeKind::Other: return "other";
    }
    return "other";
}

/// Classification of a difference set. Square reports gamma1 == gamma2;
/// Rect implies gamma1 != gamma2 with both nonempty.
struct Shape {
    ShapeKind kind = ShapeKind::Zero;
    IndexSet gamma1;
    IndexSet gamma2;

    friend bool operator==(const Shape& a, const Shape& b) {
        return a.kind == b.kind && a.gamma1 == b.gamma1 && a.gamma2 == b.gamma2;
    }
};

/// Decides whether v is zero, an exact product gamma1 x gamma2 (Square when
/// gamma1 == gamma2, Rect otherwise), or anything else. Total and deterministic.
inline Shape classify_shape(const GridVector& v) {
    const int n = v.side();
    if (v.is_zero()) return Shape{ShapeKind::Zero, IndexSet(n), IndexSet(n)};
    IndexSet rows = v.row_support();
    IndexSet cols = v.col_support();
    if (!(v == product_vector(rows, cols, n)))
        return Shape{ShapeKind::Other, IndexSet(n), IndexSet(n)};
    if (rows == cols) return Shape{ShapeKind::Square, rows, cols};
    return Shape{ShapeKind::Rect, rows, cols};
}

/// Parse failure with 1-based location in the offending text.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column),
          message_(message) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

/// Canonical text form: n rows of n characters from {0,1}, each row
/// newline-terminated.
inline std::string format_grid(const GridVector& v) {
    std::string out;
    out.reserve(static_cast<std::size_t>(v.side()) * (v.side() + 1));
    for (int x = 1; x <= v.side(); ++x) {
        for (int y = 1; y <= v.side(); ++y) out.push_back(v.test(x, y) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

/// Inverse of format_grid. The side length is taken from the first row; a
/// final newline may be omitted. Anything else is a ParseError.
inline GridVector parse_grid(const std::string& text) {
    if (text.empty()) throw ParseError(1, 1, "empty input");
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    if (lines.empty() || lines[0].empty()) throw ParseError(1, 1, "empty first row");
    const int n = static_cast<int>(lines[0].size());
    if (static_cast<int>(lines.size()) > n)
        throw ParseError(n + 1, 1,
                         "expected " + std::to_string(n) + " rows of " + std::to_string(n) +
                             " characters");
    if (static_cast<int>(lines.size()) < n)
        throw ParseError(static_cast<int>(lines.size()) + 1, 1,
                         "expected " + std::to_string(n) + " rows, got " +
                             std::to_string(lines.size()));
    GridVector v(n);
    for (int x = 1; x <= n; ++x) {
        const std::string& row = lines[static_cast<std::size_t>(x) - 1];
        if (static_cast<int>(row.size()) != n)
            throw ParseError(x, static_cast<int>(row.size()) + 1,
                             "row has " + std::to_string(row.size()) + " characters, expected " +
                                 std::to_string(n));
        for (int y = 1; y <= n; ++y) {
            const char c = row[static_cast<std::size_t>(y) - 1];
            if (c == '1')
                v.set(x, y);
            else if (c != '0')
                throw ParseError(x, y, std::string("unexpected character '") + c + "'");
        }
    }
    return v;
}

}  // namespace qdhj
