#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qdhj/grid.hpp"
#include "support/oracles.hpp"

using namespace qdhj;

namespace {

GridVector random_grid(int n, std::mt19937_64& rng) {
    GridVector v(n);
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y)
            if (rng() & 1u) v.set(x, y, true);
    return v;
}

}  // namespace

TEST_CASE("cell addressing is row-major with x downward") {
    GridVector v(3);
    v.set(1, 2, true);  // bit 1
    v.set(2, 1, true);  // bit 3
    v.set(3, 3, true);  // bit 8
    CHECK(v.value64() == ((1u << 1) | (1u << 3) | (1u << 8)));
    CHECK(v.test(1, 2));
    CHECK_FALSE(v.test(2, 2));
    CHECK(v.popcount() == 3);
    CHECK_THROWS_AS(v.test(0, 1), std::out_of_range);
    CHECK_THROWS_AS(v.test(1, 4), std::out_of_range);
    CHECK_THROWS_AS(v.set(4, 1, true), std::out_of_range);
}

TEST_CASE("xor is self-inverse and closes difference triangles") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const GridVector s1 = random_grid(n, rng);
        const GridVector s2 = random_grid(n, rng);
        const GridVector s3 = random_grid(n, rng);
        CHECK((s1 ^ s1).is_zero());
        const GridVector d12 = s1 ^ s2, d13 = s1 ^ s3, d23 = s2 ^ s3;
        CHECK(d12 == xor_add(d13, d23));
        CHECK(xor_add(s1, s2) == xor_add(s2, s1));
        CHECK(((s1 ^ s2) ^ s3) == (s1 ^ (s2 ^ s3)));
    }
}

TEST_CASE("disjoint supports cancel nothing") {
    GridVector a(2), b(2);
    a.set(1, 1, true);
    b.set(1, 1, true);
    b.set(2, 2, true);
    GridVector expect(2);
    expect.set(2, 2, true);
    CHECK((a ^ b) == expect);
}

TEST_CASE("xor rejects mismatched sizes") {
    CHECK_THROWS_AS(GridVector(2) ^ GridVector(3), std::invalid_argument);
}

TEST_CASE("product vector lays out gamma1 x gamma2") {
    CHECK(product_vector(IndexSet(3, {}), IndexSet(3, {1, 2}), 3).is_zero());
    const GridVector full = product_vector(IndexSet(4, {1, 2, 3, 4}), IndexSet(4, {1, 2, 3, 4}), 4);
    CHECK(full.popcount() == 16);

    const GridVector v = product_vector(IndexSet(4, {1}), IndexSet(4, {2, 3}), 4);
    CHECK(v.popcount() == 2);
    CHECK(v.test(1, 2));
    CHECK(v.test(1, 3));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const IndexSet g1 = IndexSet::from_mask(n, rng() & ((1u << n) - 1));
        const IndexSet g2 = IndexSet::from_mask(n, rng() & ((1u << n) - 1));
        const GridVector p = product_vector(g1, g2, n);
        CHECK(p.popcount() == g1.size() * g2.size());
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y)
                CHECK(p.test(x, y) == (g1.contains(x) && g2.contains(y)));
    }
    CHECK_THROWS_AS(product_vector(IndexSet(3, {1}), IndexSet(4, {1}), 4), std::invalid_argument);
}

TEST_CASE("classification matches the brute-force oracle") {
    GridVector diag(2);
    diag.set(1, 1, true);
    diag.set(2, 2, true);
    CHECK(classify_shape(diag).kind == ShapeKind::Other);
    CHECK(classify_shape(GridVector(3)).kind == ShapeKind::Zero);

    const Shape rect = classify_shape(product_vector(IndexSet(4, {1}), IndexSet(4, {2, 3}), 4));
    CHECK(rect.kind == ShapeKind::Rect);
    CHECK(rect.gamma1 == IndexSet(4, {1}));
    CHECK(rect.gamma2 == IndexSet(4, {2, 3}));

    std::mt19937_64 rng(2024);
    int squares_seen = 0, rects_seen = 0, others_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        GridVector v(n);
        if (trial % 3 == 0) {
            const IndexSet g1 = IndexSet::from_mask(n, 1 + rng() % ((1u << n) - 1));
            const IndexSet g2 = IndexSet::from_mask(n, 1 + rng() % ((1u << n) - 1));
            v = product_vector(g1, g2, n);
        } else {
            v = random_grid(n, rng);
        }
        const Shape got = classify_shape(v);
        const Shape want = oracle::classify(v);
        CHECK(got.kind == want.kind);
        if (want.kind == ShapeKind::Square || want.kind == ShapeKind::Rect) {
            CHECK(got.gamma1 == want.gamma1);
            CHECK(got.gamma2 == want.gamma2);
        }
        if (got.kind == ShapeKind::Square) ++squares_seen;
        if (got.kind == ShapeKind::Rect) ++rects_seen;
        if (got.kind == ShapeKind::Other) ++others_seen;
    }
    CHECK(squares_seen > 0);
    CHECK(rects_seen > 0);
    CHECK(others_seen > 0);
}

TEST_CASE("square never reports as rect") {
    const Shape s = classify_shape(product_vector(IndexSet(3, {1, 3}), IndexSet(3, {1, 3}), 3));
    CHECK(s.kind == ShapeKind::Square);
    CHECK(s.gamma1 == s.gamma2);
}

TEST_CASE("grid text round-trips and errors carry locations") {
    CHECK(parse_grid("00\n00\n") == GridVector(2));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const GridVector v = random_grid(1 + static_cast<int>(rng() % 8), rng);
        CHECK(parse_grid(format_grid(v)) == v);
    }
    CHECK(parse_grid("01\n10") == parse_grid("01\n10\n"));  // missing final newline tolerated

    try {
        parse_grid("010\n01\n000\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    try {
        parse_grid("01\n0x\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 2);
    }
    CHECK_THROWS_AS(parse_grid(""), ParseError);
    CHECK_THROWS_AS(parse_grid("010\n000\n"), ParseError);  // 2 rows of 3
}

TEST_CASE("canonical order matches numeric value order") {
    for (int n = 1; n <= 3; ++n) {
        const std::uint64_t total = std::uint64_t{1} << (n * n);
        for (std::uint64_t v = 1; v < total; ++v) {
            CHECK(GridVector::from_value64(n, v - 1) < GridVector::from_value64(n, v));
        }
    }
}

TEST_CASE("row and column supports") {
    const GridVector v = product_vector(IndexSet(5, {2, 4}), IndexSet(5, {1, 5}), 5);
    CHECK(v.row_support() == IndexSet(5, {2, 4}));
    CHECK(v.col_support() == IndexSet(5, {1, 5}));
    CHECK(GridVector(5).row_support().empty());
}

TEST_CASE("index set basics") {
    IndexSet s(6, {2, 5});
    CHECK(s.size() == 2);
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(3));
    s.add(3);
    CHECK(s.size() == 3);
    CHECK(disjoint(IndexSet(6, {1, 4}), s));
    CHECK_FALSE(disjoint(IndexSet(6, {3}), s));
    CHECK(IndexSet::full(4).size() == 4);
    CHECK(IndexSet::from_mask(4, 0b1010).members() == std::vector<int>{2, 4});
    CHECK_THROWS_AS(IndexSet(4, {5}), std::invalid_argument);
    CHECK_THROWS_AS(IndexSet(4, {0}), std::invalid_argument);
}

TEST_CASE("hash is stable under equality") {
    std::mt19937_64 rng(11);
    GridVectorHash h;
    for (int trial = 0; trial < 40; ++trial) {
        const GridVector v = random_grid(4, rng);
        GridVector w = v;
        CHECK(h(v) == h(w));
        w ^= product_vector(IndexSet(4, {1}), IndexSet(4, {1}), 4);
        CHECK(v != w);
    }
}
