#include <catch2/catch_amalgamated.hpp>

#include "qdhj/extremal.hpp"
#include "qdhj/subspace.hpp"
#include "support/oracles.hpp"

using namespace qdhj;

TEST_CASE("square-shape connection sets enumerate every square") {
    for (int n = 1; n <= 4; ++n) {
        const CayleySpec spec = CayleySpec::square_shapes(n);
        CHECK(spec.family == CayleyFamily::SquareShapes);
        CHECK(spec.connection.size() == (std::size_t{1} << n) - 1);
        for (const GridVector& c : spec.connection) {
            CHECK_FALSE(c.is_zero());
            CHECK(oracle::classify(c).kind == ShapeKind::Square);
        }
        for (std::size_t i = 1; i < spec.connection.size(); ++i)
            CHECK(spec.connection[i - 1] < spec.connection[i]);
    }
    CHECK_THROWS_AS(CayleySpec::square_shapes(0), std::invalid_argument);
    CHECK_THROWS_AS(CayleySpec::square_shapes(17), std::invalid_argument);
    CHECK(std::string(to_string(CayleyFamily::SquareShapes)) == "square_shapes");
}

TEST_CASE("rect-shape connection sets cover all products") {
    const CayleySpec spec = CayleySpec::rect_shapes(2);
    CHECK(spec.connection.size() == 9);
    for (const GridVector& c : spec.connection) {
        const ShapeKind kind = oracle::classify(c).kind;
        CHECK((kind == ShapeKind::Square || kind == ShapeKind::Rect));
    }
    CHECK_THROWS_AS(CayleySpec::rect_shapes(8), std::invalid_argument);
    CHECK(std::string(to_string(CayleyFamily::RectShapes)) == "rect_shapes");
}

TEST_CASE("custom connection sets are validated, deduplicated, sorted") {
    const GridVector a(2, {{1, 1}});
    const GridVector b(2, {{2, 2}});
    const CayleySpec spec = CayleySpec::custom(2, {b, a, b});
    CHECK(spec.connection.size() == 2);
    CHECK(spec.connection[0] == a);
    CHECK_THROWS_AS(CayleySpec::custom(2, {GridVector(2)}), std::invalid_argument);
    CHECK_THROWS_AS(CayleySpec::custom(2, {GridVector(3, {{1, 1}})}), std::invalid_argument);
}

TEST_CASE("cayley graph answers adjacency through the connection set") {
    const CayleyGraph graph = build_cayley(CayleySpec::square_shapes(2));
    CHECK(graph.vertex_count() == 16);
    CHECK(graph.degree() == 3);
    const GridVector u(2, {{1, 2}});
    const GridVector v = u ^ product_vector(IndexSet(2, {1}), IndexSet(2, {1}), 2);
    CHECK(graph.adjacent(u, v));
    CHECK(graph.adjacent(v, u));
    CHECK_FALSE(graph.adjacent(u, u));
    const auto nb = graph.neighbors(u);
    CHECK(nb.size() == 3);
    for (const GridVector& w : nb) CHECK(graph.adjacent(u, w));
    CHECK_THROWS_AS(build_cayley(CayleySpec::square_shapes(8)), std::length_error);
}

TEST_CASE("avoidance checking agrees with shape classification on both routes") {
    // spiral spans avoid squares exactly while no row set of size 4 exists
    for (int n = 2; n <= 3; ++n) {
        const auto members = span_vector(spiral_basis(n));
        const AvoidCheck chk = check_avoiding(CayleySpec::square_shapes(n), members);
        CHECK(chk.avoiding);
        CHECK(chk.checks == members.size() * (members.size() - 1) / 2);
    }
    const auto big = span_vector(spiral_basis(4));
    CHECK_FALSE(check_avoiding(CayleySpec::square_shapes(4), big).avoiding);
}

TEST_CASE("exact search on the one-cell grid") {
    const ExtremalResult r = max_avoiding_exact(CayleySpec::square_shapes(1));
    CHECK(r.best_size == 1);
    CHECK(r.exact);
    CHECK(r.witness.size() == 1);
}

TEST_CASE("exact search matches subset enumeration at n = 2") {
    for (const CayleySpec& spec :
         {CayleySpec::square_shapes(2), CayleySpec::rect_shapes(2)}) {
        const oracle::MisOracle truth = oracle::mis_by_enumeration(2, spec.connection);
        const ExtremalResult r = max_avoiding_exact(spec);
        CAPTURE(to_string(spec.family));
        CHECK(r.exact);
        CHECK(r.best_size == truth.best);
        CHECK(truth.best_through_zero == truth.best);  // vertex transitivity
        CHECK(r.witness.size() == r.best_size);
        const auto members = r.witness.members();
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const ShapeKind kind = oracle::classify(members[i] ^ members[j]).kind;
                if (spec.family == CayleyFamily::SquareShapes)
                    CHECK(kind != ShapeKind::Square);
                else
                    CHECK((kind != ShapeKind::Square && kind != ShapeKind::Rect));
            }
    }
    CHECK(max_avoiding_exact(CayleySpec::square_shapes(2)).best_size == 8);
}

TEST_CASE("exact search at n = 3 certifies a quarter-density set") {
    const ExtremalResult r = max_avoiding_exact(CayleySpec::square_shapes(3));
    CHECK(r.exact);
    CHECK(r.best_size >= 128);
    CHECK(r.best_size % 8 == 0);  // eight cosets of the connection span
    CHECK(r.witness.size() == r.best_size);
    CHECK(r.trace_length >= r.best_size * (r.best_size - 1) / 2);
}

TEST_CASE("budget exhaustion downgrades to a certified lower bound") {
    ExtremalOptions opts;
    opts.node_budget = 1;
    const ExtremalResult r = max_avoiding_exact(CayleySpec::square_shapes(2), opts);
    CHECK_FALSE(r.exact);
    CHECK(r.bound_method == "branch-and-bound budget exhausted; lower bound only");
    CHECK(r.best_size == 2);  // one root vertex per coset
    CHECK(r.witness.size() == 2);
    CHECK_THROWS_AS(max_avoiding_exact(CayleySpec::square_shapes(4)), std::invalid_argument);
}

TEST_CASE("greedy search is reproducible and reaches the degree bound") {
    const CayleySpec spec = CayleySpec::square_shapes(3);
    const ExtremalResult a = avoiding_greedy(spec, 12345);
    const ExtremalResult b = avoiding_greedy(spec, 12345);
    const ExtremalResult c = avoiding_greedy(spec, 54321);
    CHECK(a.best_size == b.best_size);
    CHECK(a.witness.members() == b.witness.members());
    CHECK_FALSE(a.exact);
    CHECK(a.bound_method == "seeded greedy, maximal");
    // maximality forces at least universe / (degree + 1)
    CHECK(a.best_size >= 512 / (spec.connection.size() + 1));
    CHECK(c.best_size >= 512 / (spec.connection.size() + 1));
    const auto members = a.witness.members();
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            CHECK(oracle::classify(members[i] ^ members[j]).kind != ShapeKind::Square);
}

TEST_CASE("greedy warm start is preserved and extended") {
    const CayleySpec spec = CayleySpec::square_shapes(3);
    const auto warm = span_vector(spiral_basis(3));
    const ExtremalResult r = avoiding_greedy(spec, 7, warm);
    CHECK(r.best_size == 128);  // the span is already maximal
    for (const GridVector& w : warm) CHECK(r.witness.contains(w));

    const ExtremalResult cold = avoiding_greedy(spec, 7);
    CHECK(cold.best_size >= 64);

    // a non-avoiding warm start is rejected up front
    const CayleySpec spec4 = CayleySpec::square_shapes(4);
    CHECK_THROWS_AS(avoiding_greedy(spec4, 7, span_vector(spiral_basis(4))),
                    std::invalid_argument);
    CHECK_THROWS_AS(avoiding_greedy(spec, 7, {GridVector(4)}), std::invalid_argument);
    CHECK_THROWS_AS(avoiding_greedy(CayleySpec::square_shapes(6), 1), std::invalid_argument);
}
