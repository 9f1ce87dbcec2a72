#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "hypflow/metric.hpp"

namespace hypflow {

// canonical closed oriented face lists
std::vector<std::array<int, 3>> tetrahedron_faces(); // chi = 2
std::vector<std::array<int, 3>> octahedron_faces();  // chi = 2
std::vector<std::array<int, 3>> torus_faces();       // 7 vertices, chi = 0
std::vector<std::array<int, 3>> genus2_faces();      // 10 vertices, chi = -2
std::vector<std::array<int, 3>> one_vertex_torus_faces(); // non-simplicial, chi = 0

enum class FixtureKind { sphere, torus, genus2 };
std::vector<std::array<int, 3>> fixture_faces(FixtureKind kind);

// deterministic uniform draw in [lo, hi) from the top 53 bits
double uniform(std::mt19937_64& rng, double lo, double hi);

// Decorated class sampled per seed: radii in [0.3, 1.5], inversive distances
// in [1.05, 3], edges of inadmissible faces resampled until every face
// satisfies the triangle inequalities, then surgery to weighted Delaunay.
// Throws SamplingExhausted after 1e5 rejection rounds.
ConformalClass random_decorated_class(const std::vector<std::array<int, 3>>& faces,
                                      std::uint64_t seed);

ConformalClass fixture_class(FixtureKind kind, std::uint64_t seed);

} // namespace hypflow
