#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hypflow/errors.hpp"

namespace hypflow {

// Half-edge mesh of a closed oriented triangulated surface.
//
// Half-edges come in twin pairs (twin(h) == h^1), so edge ids are h>>1 and an
// edge keeps its id when flipped. Vertices are bare indices; loops and
// multi-edges are allowed, so all traversal goes through half-edges and never
// through vertex-pair lookup.
class Triangulation {
  public:
    Triangulation() = default;

    int num_vertices() const { return num_vertices_; }
    int num_halfedges() const { return static_cast<int>(next_.size()); }
    int num_edges() const { return num_halfedges() / 2; }
    int num_faces() const { return static_cast<int>(face_he_.size()); }
    int euler_characteristic() const { return num_vertices() - num_edges() + num_faces(); }

    int twin(int h) const { return h ^ 1; }
    int next(int h) const { return next_[h]; }
    int prev(int h) const { return next_[next_[h]]; } // faces are triangles
    int origin(int h) const { return origin_[h]; }
    int dest(int h) const { return origin_[next_[h]]; }
    int face(int h) const { return face_[h]; }
    int edge(int h) const { return h >> 1; }
    int halfedge(int e) const { return 2 * e; }
    int face_halfedge(int f) const { return face_he_[f]; }
    int vertex_halfedge(int v) const { return vertex_he_[v]; }

    // endpoints of an edge, in the orientation of half-edge 2e
    std::array<int, 2> edge_vertices(int e) const {
        return {origin(2 * e), dest(2 * e)};
    }
    std::array<int, 3> face_vertices(int f) const {
        const int h = face_he_[f];
        return {origin(h), origin(next_[h]), origin(prev(h))};
    }
    std::array<int, 3> face_halfedges(int f) const {
        const int h = face_he_[f];
        return {h, next_[h], prev(h)};
    }
    // edges of face f, ordered so that edge m is opposite corner m of
    // face_vertices(f) (edge 0 joins vertices 1,2 and so on)
    std::array<int, 3> face_edges_opposite(int f) const {
        const int h = face_he_[f];
        return {edge(next_[h]), edge(prev(h)), edge(h)};
    }

    std::vector<std::array<int, 3>> faces() const;
    std::vector<int> vertex_degrees() const; // corner count per vertex

    bool is_simplicial() const;

    // Undoes nothing, checks everything: twin/next algebra, face closure,
    // origin consistency. Used by tests and after surgery-heavy runs.
    bool check_integrity() const;

    // Flips edge e: hinge faces {i,j,k},{j,i,l} become {i,l,k},{l,j,k} and the
    // edge joins k,l afterwards. Throws SelfGluedEdge when both sides of e are
    // the same face.
    void flip(int e);

  private:
    friend Triangulation build_from_faces(const std::vector<std::array<int, 3>>&);
    friend Triangulation build_from_faces_glued(const std::vector<std::array<int, 3>>&,
                                                const std::vector<std::array<std::array<int, 2>, 2>>&);

    int num_vertices_ = 0;
    std::vector<int> next_;
    std::vector<int> origin_;
    std::vector<int> face_;
    std::vector<int> face_he_;
    std::vector<int> vertex_he_;
};

// The two faces around an edge together with the opposite vertices,
// in the orientation of half-edge 2e (which runs i -> j).
struct Hinge {
    int edge = -1;
    int vi = -1, vj = -1; // endpoints of the shared edge
    int vk = -1, vl = -1; // opposite vertices: k in face {i,j,k}, l in face {j,i,l}
    int face_k = -1, face_l = -1;
    // boundary half-edges (j->k, k->i, i->l, l->j) and their edge ids
    std::array<int, 4> boundary_he{};
    std::array<int, 4> boundary_edge{};
};

// Builds the half-edge structure from oriented vertex triples. Directed twin
// matching is deterministic; ambiguous gluings (a directed edge repeated, as
// happens with loops) are paired in scan order.
Triangulation build_from_faces(const std::vector<std::array<int, 3>>& faces);

// Same, with the twin pairing given explicitly: entry m glues half-edge slot
// sides[m][0] to sides[m][1], a side being {face index, corner 0..2} for the
// directed edge corner -> corner+1. Entry m becomes edge id m.
Triangulation build_from_faces_glued(const std::vector<std::array<int, 3>>& faces,
                                     const std::vector<std::array<std::array<int, 2>, 2>>& sides);

Hinge hinge_of(const Triangulation& tri, int e);

} // namespace hypflow
