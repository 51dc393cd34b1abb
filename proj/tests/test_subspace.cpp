#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qdhj/subspace.hpp"
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

TEST_CASE("row reduction agrees with boolean gaussian elimination") {
    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        std::vector<GridVector> vs;
        const int count = 1 + static_cast<int>(rng() % 10);
        for (int i = 0; i < count; ++i) vs.push_back(random_grid(n, rng));
        const Basis b = row_reduce(vs);
        CHECK(b.rank() == oracle::rank_gf2(vs));
        // membership agrees with the rank-comparison oracle
        for (int probe = 0; probe < 5; ++probe) {
            const GridVector v = random_grid(n, rng);
            CHECK(b.contains(v) == oracle::in_span(vs, v));
        }
    }
    CHECK_THROWS_AS(row_reduce({}), std::invalid_argument);
    CHECK_THROWS_AS(row_reduce({GridVector(2), GridVector(3)}), std::invalid_argument);
}

TEST_CASE("duplicate input drops rank") {
    GridVector a(3, {{1, 1}});
    GridVector b(3, {{2, 2}});
    const Basis basis = row_reduce({a, b, a});
    CHECK(basis.rank() == 2);
    CHECK_FALSE(basis.independent_input());
    CHECK(row_reduce({a, b}).independent_input());
}

TEST_CASE("spiral basis has full designed rank for n up to 8") {
    for (int n = 2; n <= 8; ++n) {
        const SubspaceHandle handle = spiral_basis(n);
        CHECK(handle.rank() == n * n - 2);
        CHECK(static_cast<int>(handle.basis().elements.size()) == n * n - 2);
        CHECK(handle.membership_mode() == MembershipMode::ParityKernel);
        if (n <= 6) CHECK(oracle::rank_gf2(handle.basis().elements) == n * n - 2);
        // every basis element is annihilated by both functionals
        for (const GridVector& e : handle.basis().elements)
            for (const GridVector& f : handle.parity_functionals())
                CHECK((e & f).popcount() % 2 == 0);
    }
    CHECK_THROWS_AS(spiral_basis(1), std::invalid_argument);
    CHECK_THROWS_AS(spiral_basis(0), std::invalid_argument);
}

TEST_CASE("parity and row-reduce membership routes agree") {
    std::mt19937_64 rng(99);
    for (int n = 2; n <= 6; ++n) {
        const SubspaceHandle handle = spiral_basis(n);
        int inside = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const GridVector v = random_grid(n, rng);
            const bool parity = parity_membership(handle, v);
            CHECK(parity == handle.contains_by_row_reduce(v));
            if (parity) ++inside;
        }
        // density 1/4: both routes should accept a nontrivial fraction
        CHECK(inside > 0);
    }
}

TEST_CASE("squares lie in the spiral span exactly when the side is 0 mod 4") {
    for (int n = 2; n <= 9; ++n) {
        const SubspaceHandle handle = spiral_basis(n);
        for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
            const IndexSet gamma = IndexSet::from_mask(n, bits);
            const GridVector square = product_vector(gamma, gamma, n);
            const bool expected = gamma.size() % 4 == 0;
            CHECK(parity_membership(handle, square) == expected);
            CHECK(handle.contains_by_row_reduce(square) == expected);
        }
    }
}

TEST_CASE("span enumeration walks each member exactly once") {
    const SubspaceHandle h3 = spiral_basis(3);
    std::vector<GridVector> members = span_vector(h3);
    CHECK(members.size() == 128);  // 2^(9-2)
    std::sort(members.begin(), members.end());
    CHECK(std::adjacent_find(members.begin(), members.end()) == members.end());
    for (const GridVector& v : members) {
        CHECK(parity_membership(h3, v));
        CHECK(h3.contains_by_row_reduce(v));
    }

    const SubspaceHandle h2 = spiral_basis(2);
    CHECK(span_vector(h2).size() == 4);

    // rank-0 span is just the zero vector
    GridVector seed(2, {{1, 1}});
    Basis trivial = row_reduce({seed});
    trivial.reduced.clear();
    trivial.pivots.clear();
    CHECK(span_vector(trivial) == std::vector<GridVector>{GridVector(2)});
}

TEST_CASE("span enumeration refuses oversized ranks") {
    std::vector<GridVector> singles;
    for (int i = 0; i < kSpanEnumerationMaxRank + 1; ++i)
        singles.push_back(GridVector(6, {{i / 6 + 1, i % 6 + 1}}));
    const Basis big = row_reduce(singles);
    REQUIRE(big.rank() == kSpanEnumerationMaxRank + 1);
    CHECK_THROWS_AS(SpanRange(big), std::length_error);
}

TEST_CASE("handle construction rejects inconsistent parity kernels") {
    const SubspaceHandle good = spiral_basis(3);
    // dropping one functional breaks the codimension count
    CHECK_THROWS_AS(SubspaceHandle(good.basis(), MembershipMode::ParityKernel,
                                   {good.parity_functionals()[0]}),
                    std::logic_error);
    // a functional that does not annihilate the span
    GridVector bogus(3, {{2, 1}});
    CHECK_THROWS_AS(SubspaceHandle(good.basis(), MembershipMode::ParityKernel,
                                   {good.parity_functionals()[0], bogus}),
                    std::logic_error);
    // row-reduce mode needs no functionals
    const SubspaceHandle plain(good.basis(), MembershipMode::RowReduce);
    CHECK(plain.contains(GridVector(3)));
}

TEST_CASE("even-weight coset membership") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const GridVector v = random_grid(n, rng);
        CHECK(even_weight_membership(v) == (v.popcount() % 2 == 0));
    }
    // closed under addition
    for (int trial = 0; trial < 50; ++trial) {
        const GridVector a = random_grid(3, rng), b = random_grid(3, rng);
        if (even_weight_membership(a) && even_weight_membership(b))
            CHECK(even_weight_membership(a ^ b));
    }
}

TEST_CASE("residual is a canonical coset representative") {
    std::mt19937_64 rng(555);
    const SubspaceHandle handle = spiral_basis(3);
    for (int trial = 0; trial < 60; ++trial) {
        const GridVector v = random_grid(3, rng);
        const GridVector r = handle.basis().residual(v);
        CHECK(handle.contains(v ^ r));  // v and r differ by a span member
        const GridVector w = v ^ handle.basis().reduced[rng() % handle.basis().reduced.size()];
        CHECK(handle.basis().residual(w) == r);  // same coset, same representative
    }
}
