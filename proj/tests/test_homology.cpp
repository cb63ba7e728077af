#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "morsedyn/homology.hpp"

#include <algorithm>
#include <set>

using namespace mdyn;
using namespace mdyn::testing;

TEST_CASE("betti goldens") {
    auto K = pqrs_complex();
    CHECK(betti(K, K.full_set()) == std::vector<size_t>{1, 0, 0});
    // Boundary of the square: a circle.
    auto circle = make_set(K, {{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK(betti(K, circle) == std::vector<size_t>{1, 1});
    // Two disjoint vertices.
    CHECK(betti(K, make_set(K, {{0}, {3}})) == std::vector<size_t>{2});
    for (size_t b : betti(K, K.make_set())) CHECK(b == 0);
}

TEST_CASE("relative betti goldens") {
    auto K = pqrs_complex();
    auto full = K.full_set();
    auto circle = make_set(K, {{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {1, 3}, {2, 3}});
    // (disk, boundary circle) has one relative 2-class.
    CHECK(relative_betti(K, full, circle) == std::vector<size_t>{0, 0, 1});
    CHECK(relative_betti(K, full, K.make_set()) == betti(K, full));
    CHECK(relative_betti(K, full, full) == std::vector<size_t>{0, 0, 0});
}

TEST_CASE("chain complex structure and verify") {
    auto K = pqrs_complex();
    auto X = chain_complex(K, K.full_set());
    CHECK(X.size() == K.size());
    CHECK(X.max_dim == 2);
    CHECK_NOTHROW(X.verify());
    // Broken complex trips verify.
    AbstractComplex bad;
    bad.dim = {0, 0, 1, 1, 2};
    bad.boundary = {{}, {}, {0, 1}, {0, 1}, {2}};  // dd(4) = {0,1} != 0
    bad.max_dim = 2;
    CHECK_THROWS(bad.verify());
}

TEST_CASE("chain xor") {
    CHECK(chain_xor({1, 3, 5}, {3, 4}) == ChainZ2{1, 4, 5});
    CHECK(chain_xor({}, {2}) == ChainZ2{2});
    CHECK(chain_xor({2}, {2}).empty());
}

TEST_CASE("matrix helpers") {
    auto id3 = MatZ2::identity(3);
    CHECK(mat_rank(id3) == 3);
    CHECK(mat_mul(id3, id3) == id3);
    auto z = MatZ2::zero(2, 3);
    CHECK(mat_rank(z) == 0);
    MatZ2 m = MatZ2::zero(2, 2);
    m.col[0] = {1, 1};
    m.col[1] = {1, 1};
    CHECK(mat_rank(m) == 1);
}

TEST_CASE("homology basis express and induced maps") {
    auto K = pqrs_complex();
    auto circle = make_set(K, {{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {1, 3}, {2, 3}});
    auto Xc = chain_complex(K, circle);
    auto Xd = chain_complex(K, K.full_set());
    HomologyBasis c1(Xc, 1), d1(Xd, 1), c0(Xc, 0), d0(Xd, 0);
    CHECK(c1.rank() == 1);
    CHECK(d1.rank() == 0);
    auto coords = c1.express(Xc, c1.representative(0));
    CHECK(coords == std::vector<uint8_t>{1});

    // Inclusion circle -> disk: H1 dies, H0 survives.
    std::vector<int> cm(Xc.size());
    {
        std::vector<SimplexId> circ = circle.to_vector();
        std::vector<SimplexId> full = K.full_set().to_vector();
        for (size_t i = 0; i < circ.size(); ++i) {
            auto it = std::find(full.begin(), full.end(), circ[i]);
            cm[i] = static_cast<int>(it - full.begin());
        }
    }
    auto m1 = induced_map(Xc, c1, Xd, d1, cm);
    CHECK(m1.rows == 0);
    CHECK(m1.cols == 1);
    auto m0 = induced_map(Xc, c0, Xd, d0, cm);
    CHECK(mat_rank(m0) == 1);

    // Vertex pair -> connected path: H0 map has rank 1.
    auto two = make_set(K, {{0}, {1}});
    auto path = make_set(K, {{0}, {1}, {0, 1}});
    auto Xt = chain_complex(K, two);
    auto Xp = chain_complex(K, path);
    HomologyBasis t0(Xt, 0), p0(Xp, 0);
    CHECK(t0.rank() == 2);
    CHECK(p0.rank() == 1);
    auto mt = induced_map(Xt, t0, Xp, p0, {0, 1});
    CHECK(mat_rank(mt) == 1);
}

TEST_CASE("betti and relative betti match the naive oracle") {
    auto g = test_rng(909);
    int complexes = 0;
    for (int trial = 0; trial < 205; ++trial) {
        auto K = random_complex(g, 200);
        auto X = chain_complex(K, K.full_set());
        CHECK_NOTHROW(X.verify());

        auto pad = [&](std::vector<size_t> v, size_t n) {
            v.resize(std::max(v.size(), n), 0);
            return v;
        };
        auto naive_full = naive_betti(K, K.full_set(), K.make_set());
        auto got_full = betti(K, K.full_set());
        size_t n = std::max(naive_full.size(), got_full.size());
        CHECK(pad(naive_full, n) == pad(got_full, n));

        // Euler characteristic cross-check.
        long chi_cells = 0;
        for (SimplexId s = 0; s < K.size(); ++s) chi_cells += (K.dim(s) % 2 == 0) ? 1 : -1;
        long chi_betti = 0;
        for (size_t k = 0; k < got_full.size(); ++k)
            chi_betti += (k % 2 == 0) ? static_cast<long>(got_full[k])
                                      : -static_cast<long>(got_full[k]);
        CHECK(chi_cells == chi_betti);

        // Random closed pair B <= A.
        auto A = random_closed_set(K, g, 2);
        auto B = random_closed_set(K, g, 4);
        B &= A;
        if (!A.empty()) {
            auto naive_rel = naive_betti(K, A, B);
            auto got_rel = relative_betti(K, A, B);
            size_t m = std::max(naive_rel.size(), got_rel.size());
            CHECK(pad(naive_rel, m) == pad(got_rel, m));
        }
        ++complexes;
    }
    CHECK(complexes >= 200);
}
