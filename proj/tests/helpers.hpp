#ifndef MORSEDYN_TESTS_HELPERS_HPP
#define MORSEDYN_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "morsedyn/complex.hpp"
#include "morsedyn/mvf.hpp"
#include "morsedyn/sampled_map.hpp"

namespace mdyn::testing {

// The 1-D three-vertex complex A(0) - B(1) - C(2) on a line.
inline SimplicialComplex fig1_complex() {
    return SimplicialComplex::build({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 2}});
}

// Transition counts for the A-B-C toy map (n_max = 12):
//   n(AB,AB) = 11, n(AB,BC) = 4, n(BC,AB) = 3, n(BC,BC) = 12.
inline FrequencyTable fig1_table(const SimplicialComplex& K) {
    FrequencyTable t;
    t.n_max = 12;
    auto key = [&](std::vector<int> a, std::vector<int> b) {
        return std::make_pair(static_cast<SimplexId>(K.find(a)),
                              static_cast<SimplexId>(K.find(b)));
    };
    t.counts[key({0, 1}, {0, 1})] = 11;
    t.counts[key({0, 1}, {1, 2})] = 4;
    t.counts[key({1, 2}, {0, 1})] = 3;
    t.counts[key({1, 2}, {1, 2})] = 12;
    t.accepted = 30;
    return t;
}

// Sample pairs realizing fig1_table through closed-cell counting: points are
// placed at open-edge midpoints so each sample lands in exactly one toplex.
inline std::vector<SamplePair> fig1_pairs() {
    std::vector<SamplePair> pairs;
    auto add = [&](double x, double y, int n) {
        for (int i = 0; i < n; ++i) pairs.push_back({x, 0, y, 0});
    };
    add(0.5, 0.5, 11);
    add(0.5, 1.5, 4);
    add(1.5, 0.5, 3);
    add(1.5, 1.5, 12);
    return pairs;
}

// Two triangles PQR = {0,1,2}, QRS = {1,2,3} sharing the edge QR.
inline SimplicialComplex pqrs_complex() {
    return SimplicialComplex::build({{0, 0}, {1, 0}, {0, 1}, {1, 1}},
                                    {{0, 1, 2}, {1, 2, 3}});
}

inline SimplexSet make_set(const SimplicialComplex& K,
                           const std::vector<std::vector<int>>& cells) {
    SimplexSet s(K.size());
    for (const auto& c : cells) s.insert(static_cast<SimplexId>(K.find(c)));
    return s;
}

// The multivector field of the PQRS example: three vertex-edge pairs around
// the PQR triangle, the triangle itself, and the star of S.
inline std::vector<SimplexSet> pqrs_parts(const SimplicialComplex& K) {
    return {make_set(K, {{0}, {0, 2}}),
            make_set(K, {{2}, {1, 2}}),
            make_set(K, {{1}, {0, 1}}),
            make_set(K, {{0, 1, 2}}),
            make_set(K, {{3}, {2, 3}, {1, 3}, {1, 2, 3}})};
}

// Deterministic RNG for property tests.
inline std::mt19937_64 test_rng(uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace mdyn::testing

#endif
