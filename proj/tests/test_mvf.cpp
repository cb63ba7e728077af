#include "doctest.h"
#include "helpers.hpp"
#include "morsedyn/mvf.hpp"

#include <sstream>

using namespace mdyn;
using namespace mdyn::testing;

TEST_CASE("validate_mvf rejects non orderly convex parts with a witness") {
    auto K = pqrs_complex();
    CHECK_NOTHROW(validate_mvf(K, pqrs_parts(K)));
    // {P, PQR} skips the intermediate edges.
    CHECK_THROWS_WITH_AS(
        validate_mvf(K, {make_set(K, {{0}, {0, 1, 2}}), make_set(K, {{1}, {0, 1}}),
                         make_set(K, {{2}, {0, 2}, {1, 2}}),
                         make_set(K, {{3}, {2, 3}, {1, 3}, {1, 2, 3}})}),
        doctest::Contains("not orderly convex"), std::invalid_argument);
    // Overlapping parts are not a partition.
    CHECK_THROWS(validate_mvf(K, {make_set(K, {{0}}), make_set(K, {{0}, {0, 1}})}));
}

TEST_CASE("generated system of the pqrs field matches the hand computation") {
    auto K = pqrs_complex();
    auto F = generated_system(validate_mvf(K, pqrs_parts(K)));
    auto id = [&](std::vector<int> v) { return static_cast<SimplexId>(K.find(v)); };
    auto expect = [&](std::vector<int> from, std::vector<std::vector<int>> to) {
        SimplexSet s(K.size());
        for (auto& c : to) s.insert(id(c));
        CHECK(F.successors(id(from)) == s);
    };
    // F_V(s) = cl s u [s]_V, per simplex:
    expect({0}, {{0}, {0, 2}});
    expect({1}, {{1}, {0, 1}});
    expect({2}, {{2}, {1, 2}});
    expect({3}, {{3}, {2, 3}, {1, 3}, {1, 2, 3}});
    expect({0, 1}, {{0}, {1}, {0, 1}});
    expect({0, 2}, {{0}, {2}, {0, 2}});
    expect({1, 2}, {{1}, {2}, {1, 2}});
    expect({1, 3}, {{1}, {3}, {1, 3}, {2, 3}, {1, 2, 3}});
    expect({2, 3}, {{2}, {3}, {2, 3}, {1, 3}, {1, 2, 3}});
    expect({0, 1, 2}, {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}});
    expect({1, 2, 3}, {{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}});
    // Every simplex is a fixed point.
    for (SimplexId s = 0; s < K.size(); ++s) CHECK(F.has_edge(s, s));
}

TEST_CASE("pqrs morse decomposition") {
    auto K = pqrs_complex();
    auto F = generated_system(validate_mvf(K, pqrs_parts(K)));
    auto md = minimal_morse_decomposition(F);
    REQUIRE(md.sets.size() == 3);
    auto hexagon = make_set(K, {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}});
    auto star_s = make_set(K, {{3}, {2, 3}, {1, 3}, {1, 2, 3}});
    auto pqr = make_set(K, {{0, 1, 2}});
    CHECK(md.sets[0] == hexagon);
    CHECK(md.sets[1] == star_s);
    CHECK(md.sets[2] == pqr);
    CHECK(md.greater(1, 0));
    CHECK(md.greater(2, 0));
    CHECK(!md.greater(1, 2));
    CHECK(!md.greater(2, 1));
    std::string why;
    CHECK(verify_morse_decomposition(F, md, &why));
}

TEST_CASE("singleton intersect pullback inscribed") {
    auto K = pqrs_complex();
    auto V = validate_mvf(K, pqrs_parts(K));
    auto S1 = singleton_mvf(K);
    CHECK(S1.size() == K.size());
    CHECK(intersect(V, S1).size() == S1.size());
    CHECK(intersect(V, V).size() == V.size());
    CHECK(inscribed(S1, V));
    CHECK(!inscribed(V, S1));
    CHECK(inscribed(V, V));
    std::vector<SimplexId> idm(K.size());
    for (SimplexId s = 0; s < K.size(); ++s) idm[s] = s;
    auto pb = pullback(K, idm, V);
    CHECK(pb.size() == V.size());
    CHECK(inscribed(pb, V));
    CHECK(inscribed(V, pb));
}

TEST_CASE("cvcmf on the pqrs square") {
    auto K = pqrs_complex();
    // P pushes diagonally toward QR, S pushes back toward QR, Q and R still.
    VectorCloud c{{1, 0, 0, -1}, {1, 0, 0, -1}};
    auto W = cvcmf(K, c, 45.0);
    std::ostringstream os;
    write_mvf(os, W);
    CHECK(os.str() ==
          "0: 0 1 4\n"
          "1: 2 5\n"
          "2: 6\n"
          "3: 3 7\n"
          "4: 9\n"
          "5: 8 10\n");
    // Tightening alpha to 0 degrees yields the singleton field (no vector is
    // exactly aligned with any edge here except where forced).
    auto W0 = cvcmf(K, c, 0.0);
    for (const auto& p : W0.parts) CHECK(is_orderly_convex(K, p));
    CHECK(inscribed(W0, W));
}

TEST_CASE("trivial morse sets") {
    auto K = pqrs_complex();
    // The fixed triangle PQR has nonzero relative homology (index of a
    // repeller), so it is not trivial.
    CHECK(!is_trivial_morse(K, make_set(K, {{0, 1, 2}})));
    // An edge-vertex pair collapses: trivial.
    CHECK(is_trivial_morse(K, make_set(K, {{1}, {0, 1}})));
    // A free vertex alone is an attractor: not trivial.
    CHECK(!is_trivial_morse(K, make_set(K, {{3}})));
    // Triangle with one free edge collapses: trivial.
    CHECK(is_trivial_morse(K, make_set(K, {{1, 2, 3}, {1, 3}})));
}

TEST_CASE("mvf text round trip") {
    auto K = pqrs_complex();
    auto V = validate_mvf(K, pqrs_parts(K));
    std::ostringstream os;
    write_mvf(os, V);
    std::istringstream is(os.str());
    auto parts = read_mvf_parts(is, K);
    auto V2 = validate_mvf(K, parts);
    CHECK(inscribed(V, V2));
    CHECK(inscribed(V2, V));
}

TEST_CASE("vector cloud csv round trip") {
    auto K = pqrs_complex();
    VectorCloud c{{0.5, -1.25, 3e-7, 0}, {1.0, 0.25, -2.5, 1e300}};
    std::ostringstream os;
    write_vector_cloud(os, K, c);
    std::istringstream is(os.str());
    auto c2 = read_vector_cloud(is);
    REQUIRE(c2.size() == c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        CHECK(c2.vx[i] == c.vx[i]);
        CHECK(c2.vy[i] == c.vy[i]);
    }
}
