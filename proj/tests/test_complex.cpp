#include "doctest.h"
#include "helpers.hpp"
#include "morsedyn/complex.hpp"

#include <algorithm>
#include <sstream>

using namespace mdyn;
using namespace mdyn::testing;

TEST_CASE("id order is a linear extension of the face order") {
    auto K = pqrs_complex();
    CHECK(K.size() == 11);  // 4 vertices, 5 edges, 2 triangles
    CHECK(K.dim() == 2);
    for (SimplexId s = 0; s < K.size(); ++s)
        for (SimplexId f : K.proper_faces(s)) CHECK(f < s);
    // (dim, lex) ordering: vertices 0..3 are ids 0..3.
    for (int v = 0; v < 4; ++v) CHECK(K.find({v}) == v);
    CHECK(K.find({0, 1, 2}) < K.find({1, 2, 3}));
    CHECK(K.find({9}) == -1);
}

TEST_CASE("faces cofaces toplexes") {
    auto K = pqrs_complex();
    auto qr = static_cast<SimplexId>(K.find({1, 2}));
    CHECK(K.facets(qr).size() == 2);
    CHECK(K.cofacets(qr).size() == 2);
    CHECK(K.proper_cofaces(qr).size() == 2);
    CHECK(!K.is_toplex(qr));
    CHECK(K.toplexes().size() == 2);
    CHECK(K.is_face(qr, static_cast<SimplexId>(K.find({0, 1, 2}))));
    CHECK(!K.is_face(static_cast<SimplexId>(K.find({0, 1, 2})), qr));
    CHECK(K.label(qr) == "1.2");
}

TEST_CASE("closure star open closed") {
    auto K = pqrs_complex();
    auto t = static_cast<SimplexId>(K.find({0, 1, 2}));
    SimplexSet a(K.size());
    a.insert(t);
    auto cl = closure(K, a);
    CHECK(cl.count() == 7);
    CHECK(is_closed(K, cl));
    CHECK(!is_closed(K, a));
    CHECK(is_open(K, a));  // a toplex is open
    auto st = upper_set(K, static_cast<SimplexId>(K.find({1, 2})));
    CHECK(st.count() == 3);
    CHECK(is_open(K, st));
    CHECK(!is_closed(K, st));
    // Complement duality on random subsets.
    auto g = test_rng(3);
    for (int i = 0; i < 200; ++i) {
        SimplexSet s(K.size());
        for (SimplexId j = 0; j < K.size(); ++j)
            if (g() & 1) s.insert(j);
        CHECK(is_open(K, s) == is_closed(K, K.full_set() - s));
        auto c = closure(K, s.empty() ? a : s);
        CHECK(is_closed(K, c));
        CHECK(closure(K, c) == c);  // idempotent
    }
}

TEST_CASE("interval and orderly convexity") {
    auto K = pqrs_complex();
    auto p = static_cast<SimplexId>(K.find({0}));
    auto pqr = static_cast<SimplexId>(K.find({0, 1, 2}));
    auto iv = interval(K, p, pqr);
    CHECK(iv.count() == 4);  // P, PQ, PR, PQR
    CHECK(interval(K, p, static_cast<SimplexId>(K.find({1, 2, 3}))).empty());

    CHECK(is_orderly_convex(K, make_set(K, {{0}, {0, 1}})));
    CHECK(is_orderly_convex(K, iv));
    std::array<SimplexId, 3> w{};
    CHECK(!is_orderly_convex(K, make_set(K, {{0}, {0, 1, 2}}), &w));
    CHECK(w[0] == p);
    CHECK(w[2] == pqr);
}

TEST_CASE("order components") {
    auto K = pqrs_complex();
    auto comps = order_components(K, make_set(K, {{0}, {0, 1}, {3}}));
    CHECK(comps.size() == 2);
    auto one = order_components(K, make_set(K, {{0}, {0, 1}, {1}, {1, 3}, {3}}));
    CHECK(one.size() == 1);
}

TEST_CASE("mesh text round trip") {
    auto K = pqrs_complex();
    std::ostringstream os;
    write_mesh(os, K);
    std::istringstream is(os.str());
    auto K2 = read_mesh(is);
    CHECK(K2.size() == K.size());
    for (int v = 0; v < K.vertex_count(); ++v) CHECK(K2.coord(v) == K.coord(v));
    std::ostringstream os2;
    write_mesh(os2, K2);
    CHECK(os.str() == os2.str());

    // 1-D mesh with free edges.
    auto L = fig1_complex();
    std::ostringstream ol;
    write_mesh(ol, L);
    std::istringstream il(ol.str());
    auto L2 = read_mesh(il);
    CHECK(L2.size() == 5);
    CHECK(L2.dim() == 1);
}
