#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qdhj/pair_search.hpp"
#include "qdhj/subspace.hpp"
#include "support/oracles.hpp"

using namespace qdhj;

TEST_CASE("point set canonicalizes and answers membership") {
    GridVector a(2, {{1, 1}});
    GridVector b(2, {{2, 2}});
    PointSet S(2, {b, a, a});
    CHECK(S.size() == 2);
    CHECK(S.members()[0] == a);  // sorted ascending
    CHECK(S.contains(a));
    CHECK_FALSE(S.contains(GridVector(2)));
    CHECK(S.density() == Catch::Approx(2.0 / 16.0));
    CHECK_THROWS_AS(S.contains(GridVector(3)), std::invalid_argument);
    CHECK_THROWS_AS(PointSet(2, {GridVector(3)}), std::invalid_argument);
    CHECK_THROWS_AS(PointSet::universe(5), std::length_error);
    CHECK(PointSet::universe(2).size() == 16);

    // hashed path (grid too large for the bit table)
    GridVector big(6, {{3, 4}});
    PointSet H(6, {big});
    CHECK(H.contains(big));
    CHECK_FALSE(H.contains(GridVector(6)));
}

TEST_CASE("random point sets are reproducible and exact-sized") {
    const PointSet a = random_point_set(3, 100, 77);
    const PointSet b = random_point_set(3, 100, 77);
    const PointSet c = random_point_set(3, 100, 78);
    CHECK(a.size() == 100);
    CHECK(a.members() == b.members());
    CHECK(a.members() != c.members());
    CHECK_THROWS_AS(random_point_set(3, 513, 1), std::invalid_argument);
}

TEST_CASE("pigeonhole finder lands the documented first pair on the spiral span") {
    const PointSet S(4, span_vector(spiral_basis(4)));
    const auto cert = find_rect_pair(S, IndexSet(4, {1}));
    REQUIRE(cert.has_value());
    CHECK(cert->kind == CertKind::RectPair);
    CHECK(cert->a == GridVector(4));
    CHECK(cert->b == GridVector(4, {{1, 2}, {1, 3}}));
    CHECK(cert->shape.kind == ShapeKind::Rect);
    CHECK(cert->shape.gamma1 == IndexSet(4, {1}));
    CHECK(cert->shape.gamma2 == IndexSet(4, {2, 3}));
    CHECK(cert->search_mode == "pigeonhole");
    CHECK(verify_certificate(*cert, S));
}

TEST_CASE("pigeonhole certificates always carry the requested row set") {
    std::mt19937_64 rng(4242);
    const int n = 4;
    for (int trial = 0; trial < 20; ++trial) {
        const PointSet S = random_point_set(n, 16384, rng());
        const std::uint64_t mask = 1 + rng() % 15;
        const IndexSet gamma1 = IndexSet::from_mask(n, mask);
        const auto cert = find_rect_pair(S, gamma1);
        REQUIRE(cert.has_value());  // density 1/4 with n = 4 guarantees success
        CHECK(cert->shape.gamma1 == gamma1);
        CHECK(cert->shape.gamma2.size() >= 1);
        CHECK(cert->shape.gamma2.size() <= 2);
        CHECK(verify_certificate(*cert, S));
        CHECK(S.contains(cert->a));
        CHECK(S.contains(cert->b));
    }
}

TEST_CASE("pigeonhole finder argument errors and misses") {
    const PointSet S(3, {GridVector(3)});
    CHECK_THROWS_AS(find_rect_pair(S, IndexSet(3, {})), std::invalid_argument);
    CHECK_THROWS_AS(find_rect_pair(S, IndexSet(4, {1})), std::invalid_argument);
    CHECK_FALSE(find_rect_pair(PointSet(3, {}), IndexSet(3, {1})).has_value());
    // a singleton set admits no pair and no self-hit
    CHECK_FALSE(find_rect_pair(S, IndexSet(3, {1, 2})).has_value());
}

TEST_CASE("square-pair scan matches the oracle pair set on the full 2x2 universe") {
    const PointSet S = PointSet::universe(2);
    const SearchResult result = find_square_pairs(S, 1000);
    CHECK(result.complete);
    CHECK(result.mode == "exhaustive");
    // 3 squares, each pairing the 16 vertices into 8 pairs
    CHECK(result.certificates.size() == 24);

    std::set<std::pair<GridVector, GridVector>> got;
    for (const Certificate& c : result.certificates) {
        CHECK(c.kind == CertKind::SquarePair);
        CHECK(c.shape.kind == ShapeKind::Square);
        CHECK(verify_certificate(c, S));
        auto a = c.a, b = c.b;
        if (b < a) std::swap(a, b);
        got.emplace(a, b);
    }
    CHECK(got == oracle::square_pairs(S.members()));
}

TEST_CASE("limit truncation flags incompleteness") {
    const PointSet S(4, span_vector(spiral_basis(4)));
    const SearchResult all = find_square_pairs(S, 1u << 20);
    CHECK(all.complete);
    CHECK(all.certificates.size() == 8192);  // only the full square is in the span
    const SearchResult some = find_square_pairs(S, 10);
    CHECK_FALSE(some.complete);
    CHECK(some.certificates.size() == 10);
    // the truncated list is a prefix of the full one
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(some.certificates[i].a == all.certificates[i].a);
        CHECK(some.certificates[i].b == all.certificates[i].b);
    }
}

TEST_CASE("line scan is the oriented slice of the square pairs") {
    const PointSet U2 = PointSet::universe(2);
    const SearchResult lines = find_line(U2, 1000);
    CHECK(lines.complete);
    CHECK(lines.certificates.size() == 17);  // one per 1-dim square-wildcard subspace
    for (const Certificate& c : lines.certificates) {
        CHECK(c.kind == CertKind::Line);
        CHECK(c.oriented);
        CHECK((c.a & (c.a ^ c.b)).is_zero());
        CHECK(verify_certificate(c, U2));
    }

    const PointSet S4(4, span_vector(spiral_basis(4)));
    const SearchResult demo = find_line(S4, 10);
    REQUIRE(demo.certificates.size() == 1);
    CHECK(demo.certificates[0].a == GridVector(4));
    CHECK(demo.certificates[0].shape.gamma1 == IndexSet::full(4));
}

TEST_CASE("sampled search finds a planted pair deterministically") {
    std::mt19937_64 rng(31337);
    const int n = 6;
    std::vector<GridVector> members;
    for (int i = 0; i < 50; ++i) {
        GridVector v(n);
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y)
                if (rng() & 1u) v.set(x, y, true);
        members.push_back(v);
    }
    const IndexSet gamma(n, {2, 5});
    members.push_back(members[7] ^ product_vector(gamma, gamma, n));
    const PointSet S(n, members);

    SearchOptions opts;
    opts.seed = 9;
    opts.budget = 1u << 18;
    const SearchResult first = find_square_pairs(S, 100, opts);
    const SearchResult second = find_square_pairs(S, 100, opts);
    CHECK_FALSE(first.complete);
    CHECK(first.mode == "sampled");
    REQUIRE_FALSE(first.certificates.empty());
    REQUIRE(first.certificates.size() == second.certificates.size());
    for (std::size_t i = 0; i < first.certificates.size(); ++i) {
        CHECK(first.certificates[i].a == second.certificates[i].a);
        CHECK(first.certificates[i].b == second.certificates[i].b);
        CHECK(verify_certificate(first.certificates[i], S));
    }
    bool planted_found = false;
    for (const Certificate& c : first.certificates)
        if (c.shape.gamma1 == gamma) planted_found = true;
    CHECK(planted_found);

    CHECK_THROWS_AS(
        find_square_pairs(S, 10, SearchOptions{SearchMode::Exhaustive, 0, 100, 1}),
        std::invalid_argument);
}

TEST_CASE("threaded exhaustive scan matches the serial one") {
    const PointSet S(4, span_vector(spiral_basis(4)));
    SearchOptions serial;
    SearchOptions threaded;
    threaded.threads = 3;
    const SearchResult a = find_square_pairs(S, 100, serial);
    const SearchResult b = find_square_pairs(S, 100, threaded);
    REQUIRE(a.certificates.size() == b.certificates.size());
    for (std::size_t i = 0; i < a.certificates.size(); ++i) {
        CHECK(a.certificates[i].a == b.certificates[i].a);
        CHECK(a.certificates[i].b == b.certificates[i].b);
    }
}

TEST_CASE("verification rejects every kind of tampering") {
    const PointSet S(4, span_vector(spiral_basis(4)));
    const auto cert = find_rect_pair(S, IndexSet(4, {1, 2}));
    REQUIRE(cert.has_value());
    REQUIRE(verify_certificate(*cert, S));

    Certificate outside = *cert;
    outside.b = GridVector(4, {{1, 1}});  // odd parity, not in the span
    CHECK_FALSE(verify_certificate(outside, S));

    Certificate wrong_shape = *cert;
    wrong_shape.shape.gamma2 = IndexSet(4, {4});
    CHECK_FALSE(verify_certificate(wrong_shape, S));

    Certificate flipped = *cert;
    flipped.oriented = !flipped.oriented;
    CHECK_FALSE(verify_certificate(flipped, S));

    Certificate relabeled = *cert;
    relabeled.kind = CertKind::Line;
    // a rect difference can never verify as a line
    CHECK_FALSE(verify_certificate(relabeled, S));

    Certificate degenerate = *cert;
    degenerate.b = degenerate.a;
    CHECK_FALSE(verify_certificate(degenerate, S));

    Certificate wrong_size = *cert;
    wrong_size.a = GridVector(3);
    CHECK_FALSE(verify_certificate(wrong_size, S));
}
