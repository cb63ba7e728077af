#include "doctest.h"
#include "helpers.hpp"
#include "morsedyn/dynamics.hpp"
#include "morsedyn/models.hpp"
#include "morsedyn/mvf.hpp"
#include "morsedyn/nerve.hpp"
#include "morsedyn/sampled_map.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <set>
#include <sstream>

using namespace mdyn;
using namespace mdyn::testing;

TEST_CASE("order complexes of single sets") {
    auto K = pqrs_complex();
    // A lone triangle: one nerve vertex, no higher chains.
    auto n1 = morse_nerve(K, {make_set(K, {{0, 1, 2}})});
    CHECK(n1.size() == 1);
    CHECK(betti(n1.cx) == std::vector<size_t>{1});
    // The hexagon alternates vertices and edges: a 6-cycle, betti (1, 1).
    auto hexagon = make_set(K, {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}});
    auto n2 = morse_nerve(K, {hexagon});
    CHECK(n2.size() == 12);
    CHECK(betti(n2.cx) == std::vector<size_t>{1, 1});
    // The full complex: barycentric subdivision of the square, contractible.
    auto n3 = morse_nerve(K, {K.full_set()});
    CHECK(n3.size() == 45);
    CHECK(betti(n3.cx) == std::vector<size_t>{1, 0, 0});
    CHECK_NOTHROW(n3.cx.verify());
}

TEST_CASE("morse nerve of the pqrs decomposition") {
    auto K = pqrs_complex();
    auto F = generated_system(validate_mvf(K, pqrs_parts(K)));
    auto md = minimal_morse_decomposition(F);
    auto nm = morse_nerve(K, md.sets);
    CHECK(betti(nm.cx) == std::vector<size_t>{3, 1});
    // Splitting: the nerve is the disjoint union of per-set nerves.
    size_t total = 0;
    for (const auto& s : md.sets) total += morse_nerve(K, {s}).size();
    CHECK(total == nm.size());
    // Chain lookup and back maps.
    for (size_t c = 0; c < nm.size(); ++c) CHECK(nm.find_chain(nm.chains[c]) == static_cast<int>(c));
    for (size_t v = 0; v < nm.back_map.size(); ++v)
        CHECK(nm.vertex_of(nm.back_map[v]) == static_cast<int>(v));
    CHECK_THROWS(morse_nerve(K, {md.sets[0], md.sets[0]}));  // not disjoint
}

TEST_CASE("nerve inclusion maps") {
    auto K = pqrs_complex();
    auto F = generated_system(validate_mvf(K, pqrs_parts(K)));
    auto md = minimal_morse_decomposition(F);
    auto fine = morse_nerve(K, md.sets);
    auto coarse = morse_nerve(K, {K.full_set()});

    auto cm = nerve_inclusion(fine, coarse);
    HomologyBasis f0(fine.cx, 0), c0(coarse.cx, 0), f1(fine.cx, 1), c1(coarse.cx, 1);
    auto m0 = induced_map(fine.cx, f0, coarse.cx, c0, cm);
    CHECK(m0.rows == 1);
    CHECK(m0.cols == 3);
    CHECK(mat_rank(m0) == 1);
    auto m1 = induced_map(fine.cx, f1, coarse.cx, c1, cm);
    CHECK(m1.rows == 0);
    CHECK(m1.cols == 1);

    // Identity inclusion.
    auto cid = nerve_inclusion(fine, fine);
    for (size_t i = 0; i < cid.size(); ++i) CHECK(cid[i] == static_cast<int>(i));

    // Coarse into fine is not a refinement: witness thrown.
    CHECK_THROWS(nerve_inclusion(coarse, fine));
}

TEST_CASE("fig1 nerve golden dump") {
    auto K = fig1_complex();
    auto md = minimal_morse_decomposition(build_f_mu(K, fig1_table(K), Rat(3, 10)));
    auto n = morse_nerve(K, md.sets);
    CHECK(betti(n.cx) == std::vector<size_t>{2});
    std::ostringstream os;
    write_order_complex(os, K, n);
    CHECK(os.str() ==
          "0: 1\n"
          "0: 0.1\n"
          "0: 1.2\n"
          "1: 1 0.1\n");
}

TEST_CASE("disconnecting topology on the criteria decompositions") {
    auto K1 = fig1_complex();
    for (Rat mu : {Rat(3, 10), Rat(2, 5)}) {
        auto md = minimal_morse_decomposition(build_f_mu(K1, fig1_table(K1), mu));
        CHECK_NOTHROW(check_disconnecting_topology(K1, md.sets));
    }
    auto K2 = pqrs_complex();
    auto md2 = minimal_morse_decomposition(generated_system(validate_mvf(K2, pqrs_parts(K2))));
    CHECK_NOTHROW(check_disconnecting_topology(K2, md2.sets));
}

TEST_CASE("disconnecting topology on random families") {
    auto g = test_rng(41);
    int done = 0;
    while (done < 100) {
        // Random small complex: the pqrs square, the fig1 path, or a strip.
        SimplicialComplex K = [&] {
            switch (g() % 3) {
                case 0: return pqrs_complex();
                case 1: return fig1_complex();
                default:
                    return grid_mesh({Rat(0), Rat(0), Rat(2), Rat(1)}, 2, 1);
            }
        }();
        // Random disjoint family: assign each simplex to one of up to 4 sets
        // or leave it out.
        std::vector<SimplexSet> sets(1 + g() % 4, SimplexSet(K.size()));
        for (SimplexId s = 0; s < K.size(); ++s) {
            uint64_t pick = g() % (sets.size() + 2);
            if (pick < sets.size()) sets[static_cast<size_t>(pick)].insert(s);
        }
        sets.erase(std::remove_if(sets.begin(), sets.end(),
                                  [](const SimplexSet& s) { return s.empty(); }),
                   sets.end());
        if (sets.empty()) continue;
        CHECK_NOTHROW(check_disconnecting_topology(K, sets));
        ++done;
    }
    CHECK(done == 100);
}
