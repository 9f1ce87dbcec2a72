#include "hypflow/fixtures.hpp"

#include <cmath>

#include "hypflow/delaunay.hpp"
#include "hypflow/hypgeom.hpp"

namespace hypflow {

std::vector<std::array<int, 3>> tetrahedron_faces() {
    return {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
}

std::vector<std::array<int, 3>> octahedron_faces() {
    return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
            {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}};
}

std::vector<std::array<int, 3>> torus_faces() {
    std::vector<std::array<int, 3>> f;
    for (int i = 0; i < 7; ++i) {
        f.push_back({i, (i + 1) % 7, (i + 3) % 7});
        f.push_back({i, (i + 3) % 7, (i + 2) % 7});
    }
    return f;
}

std::vector<std::array<int, 3>> genus2_faces() {
    // closed oriented, N=10, E=36, F=24, chi=-2
    return {{0, 2, 1}, {1, 2, 4}, {1, 4, 3}, {2, 3, 5}, {2, 5, 4}, {3, 4, 0},
            {3, 0, 5}, {5, 0, 1}, {2, 6, 7}, {6, 1, 8}, {6, 8, 7}, {1, 7, 9},
            {1, 9, 8}, {7, 8, 0}, {7, 0, 9}, {8, 9, 2}, {8, 2, 0}, {9, 0, 6},
            {9, 6, 2}, {0, 4, 6}, {1, 6, 5}, {4, 5, 6}, {2, 7, 3}, {1, 3, 7}};
}

std::vector<std::array<int, 3>> one_vertex_torus_faces() {
    return {{0, 0, 0}, {0, 0, 0}};
}

std::vector<std::array<int, 3>> fixture_faces(FixtureKind kind) {
    switch (kind) {
        case FixtureKind::sphere: return octahedron_faces();
        case FixtureKind::torus: return torus_faces();
        default: return genus2_faces();
    }
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

ConformalClass random_decorated_class(const std::vector<std::array<int, 3>>& faces,
                                      std::uint64_t seed) {
    const Triangulation base = build_from_faces(faces);
    std::mt19937_64 rng(seed);

    constexpr double kRadLo = 0.3, kRadHi = 1.5;
    constexpr double kInvLo = 1.05, kInvHi = 3.0;
    constexpr int kBudget = 100000;

    Vec radii(base.num_vertices());
    for (Eigen::Index v = 0; v < radii.size(); ++v) radii[v] = uniform(rng, kRadLo, kRadHi);

    std::vector<double> inversive(base.num_edges());
    for (double& x : inversive) x = uniform(rng, kInvLo, kInvHi);

    auto lengths = [&](const std::vector<double>& inv) {
        std::vector<double> len(base.num_edges());
        for (int e = 0; e < base.num_edges(); ++e) {
            const auto [a, b] = base.edge_vertices(e);
            len[e] = length_from_inversive(radii[a], radii[b], inv[e]);
        }
        return len;
    };

    for (int round = 0; round < kBudget; ++round) {
        const auto len = lengths(inversive);
        std::vector<char> resample(base.num_edges(), 0);
        bool all_ok = true;
        for (int f = 0; f < base.num_faces(); ++f) {
            const auto e = base.face_edges_opposite(f);
            if (!triangle_admissible(len[e[0]], len[e[1]], len[e[2]])) {
                all_ok = false;
                for (int m = 0; m < 3; ++m) resample[e[m]] = 1;
            }
        }
        if (all_ok) {
            ConformalClass cc =
                make_class_from_inversive(base, inversive, radii);
            try {
                make_weighted_delaunay(cc, reference_factor(cc));
                return cc;
            } catch (const Error&) {
                // surgery hit a degenerate or non-separated flip: resample all
                for (int e = 0; e < base.num_edges(); ++e)
                    inversive[e] = uniform(rng, kInvLo, kInvHi);
                continue;
            }
        }
        for (int e = 0; e < base.num_edges(); ++e)
            if (resample[e]) inversive[e] = uniform(rng, kInvLo, kInvHi);
    }
    throw SamplingExhausted("no admissible decoration found within the rejection budget");
}

ConformalClass fixture_class(FixtureKind kind, std::uint64_t seed) {
    return random_decorated_class(fixture_faces(kind), seed);
}

} // namespace hypflow
