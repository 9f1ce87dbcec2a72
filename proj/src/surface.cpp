#include "hypflow/surface.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace hypflow {

std::vector<std::array<int, 3>> Triangulation::faces() const {
    std::vector<std::array<int, 3>> out(num_faces());
    for (int f = 0; f < num_faces(); ++f) out[f] = face_vertices(f);
    return out;
}

std::vector<int> Triangulation::vertex_degrees() const {
    std::vector<int> deg(num_vertices(), 0);
    for (int h = 0; h < num_halfedges(); ++h) ++deg[origin_[h]];
    return deg;
}

bool Triangulation::is_simplicial() const {
    std::map<std::array<int, 2>, int> seen;
    for (int e = 0; e < num_edges(); ++e) {
        auto [a, b] = edge_vertices(e);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        if (++seen[{a, b}] > 1) return false;
    }
    for (int f = 0; f < num_faces(); ++f) {
        auto v = face_vertices(f);
        if (v[0] == v[1] || v[1] == v[2] || v[2] == v[0]) return false;
    }
    return true;
}

bool Triangulation::check_integrity() const {
    const int nh = num_halfedges();
    if (nh % 2 != 0) return false;
    for (int h = 0; h < nh; ++h) {
        if (next_[h] < 0 || next_[h] >= nh) return false;
        if (next_[next_[next_[h]]] != h) return false;
        if (face_[h] != face_[next_[h]]) return false;
        if (dest(h) != origin_[twin(h)]) return false;
        if (origin_[h] < 0 || origin_[h] >= num_vertices_) return false;
    }
    for (int f = 0; f < num_faces(); ++f) {
        if (face_[face_he_[f]] != f) return false;
    }
    for (int v = 0; v < num_vertices_; ++v) {
        if (origin_[vertex_he_[v]] != v) return false;
    }
    return true;
}

void Triangulation::flip(int e) {
    const int a = 2 * e;     // i -> j
    const int ta = a ^ 1;    // j -> i
    const int fa = face_[a];
    const int fb = face_[ta];
    if (fa == fb)
        throw SelfGluedEdge("flip: edge " + std::to_string(e) + " has the same face on both sides");

    const int b = next_[a];  // j -> k
    const int c = next_[b];  // k -> i
    const int d = next_[ta]; // i -> l
    const int f = next_[d];  // l -> j

    const int vi = origin_[a], vj = origin_[ta];
    const int vk = origin_[c], vl = origin_[f];

    // new faces: fa = (i,l,k) with cycle d,a,c ; fb = (l,j,k) with cycle f,b,ta
    next_[d] = a;
    next_[a] = c;
    next_[c] = d;
    next_[f] = b;
    next_[b] = ta;
    next_[ta] = f;

    origin_[a] = vl; // a: l -> k
    origin_[ta] = vk;

    face_[a] = fa;
    face_[d] = fa;
    face_[c] = fa;
    face_[ta] = fb;
    face_[f] = fb;
    face_[b] = fb;

    face_he_[fa] = a;
    face_he_[fb] = ta;

    vertex_he_[vi] = d;
    vertex_he_[vj] = b;
    vertex_he_[vk] = ta;
    vertex_he_[vl] = a;
}

namespace {

Triangulation assemble(const std::vector<std::array<int, 3>>& faces,
                       const std::vector<int>& twin_of_slot) {
    const int nf = static_cast<int>(faces.size());
    const int nh = 3 * nf;

    int nv = 0;
    for (const auto& f : faces)
        for (int v : f) {
            if (v < 0) throw ParseError("negative vertex index in face list");
            nv = std::max(nv, v + 1);
        }

    // slot s = 3*face + corner carries the directed edge corner -> corner+1.
    // Assign edge ids in slot scan order so that ids are deterministic.
    std::vector<int> he_of_slot(nh, -1);
    int next_he = 0;
    for (int s = 0; s < nh; ++s) {
        if (he_of_slot[s] >= 0) continue;
        const int t = twin_of_slot[s];
        if (t < 0 || t >= nh || t == s || twin_of_slot[t] != s)
            throw NonManifoldEdge("invalid twin pairing in face gluing");
        he_of_slot[s] = next_he++;
        he_of_slot[t] = next_he++;
    }

    Triangulation tri;
    tri.num_vertices_ = nv;
    tri.next_.assign(nh, -1);
    tri.origin_.assign(nh, -1);
    tri.face_.assign(nh, -1);
    tri.face_he_.assign(nf, -1);
    tri.vertex_he_.assign(nv, -1);

    for (int f = 0; f < nf; ++f) {
        for (int corner = 0; corner < 3; ++corner) {
            const int s = 3 * f + corner;
            const int h = he_of_slot[s];
            tri.next_[h] = he_of_slot[3 * f + (corner + 1) % 3];
            tri.origin_[h] = faces[f][corner];
            tri.face_[h] = f;
            tri.vertex_he_[faces[f][corner]] = h;
        }
        tri.face_he_[f] = he_of_slot[3 * f];
    }

    for (int v = 0; v < nv; ++v)
        if (tri.vertex_he_[v] < 0)
            throw ParseError("vertex " + std::to_string(v) + " appears in no face");

    // twin consistency: twin half-edges must traverse opposite directions
    for (int h = 0; h < nh; ++h) {
        if (tri.origin_[h] != tri.dest(tri.twin(h)))
            throw InconsistentOrientation("twin half-edges do not run in opposite directions");
    }
    return tri;
}

} // namespace

Triangulation build_from_faces(const std::vector<std::array<int, 3>>& faces) {
    const int nf = static_cast<int>(faces.size());
    const int nh = 3 * nf;

    // bucket directed edges by unordered endpoint pair, then match u->v with
    // v->u (loops pair among themselves) in scan order
    std::map<std::array<int, 2>, std::vector<int>> bucket;
    auto slot_dir = [&](int s) -> std::array<int, 2> {
        const int f = s / 3, corner = s % 3;
        return {faces[f][corner], faces[f][(corner + 1) % 3]};
    };
    for (int s = 0; s < nh; ++s) {
        auto [u, v] = slot_dir(s);
        std::array<int, 2> key{std::min(u, v), std::max(u, v)};
        bucket[key].push_back(s);
    }

    std::vector<int> twin_of_slot(nh, -1);
    for (auto& [key, slots] : bucket) {
        if (slots.size() % 2 != 0)
            throw NonManifoldEdge("edge {" + std::to_string(key[0]) + "," +
                                  std::to_string(key[1]) +
                                  "} lies in an odd number of faces");
        if (key[0] == key[1]) {
            // loops: pair in scan order
            for (size_t m = 0; m + 1 < slots.size(); m += 2) {
                twin_of_slot[slots[m]] = slots[m + 1];
                twin_of_slot[slots[m + 1]] = slots[m];
            }
            continue;
        }
        std::vector<int> fwd, bwd;
        for (int s : slots)
            (slot_dir(s)[0] == key[0] ? fwd : bwd).push_back(s);
        if (fwd.size() != bwd.size())
            throw InconsistentOrientation("edge {" + std::to_string(key[0]) + "," +
                                          std::to_string(key[1]) +
                                          "} is traversed unequally in the two directions");
        for (size_t m = 0; m < fwd.size(); ++m) {
            twin_of_slot[fwd[m]] = bwd[m];
            twin_of_slot[bwd[m]] = fwd[m];
        }
    }
    for (int s = 0; s < nh; ++s)
        if (twin_of_slot[s] < 0)
            throw NonManifoldEdge("unmatched directed edge (open surface?)");

    return assemble(faces, twin_of_slot);
}

Triangulation build_from_faces_glued(const std::vector<std::array<int, 3>>& faces,
                                     const std::vector<std::array<std::array<int, 2>, 2>>& sides) {
    const int nf = static_cast<int>(faces.size());
    const int nh = 3 * nf;
    if (static_cast<int>(sides.size()) * 2 != nh)
        throw ParseError("gluing list size does not match face count");

    std::vector<int> twin_of_slot(nh, -1);
    for (const auto& pair : sides) {
        int s0 = 3 * pair[0][0] + pair[0][1];
        int s1 = 3 * pair[1][0] + pair[1][1];
        if (s0 < 0 || s0 >= nh || s1 < 0 || s1 >= nh || s0 == s1 ||
            twin_of_slot[s0] >= 0 || twin_of_slot[s1] >= 0)
            throw NonManifoldEdge("invalid explicit gluing entry");
        twin_of_slot[s0] = s1;
        twin_of_slot[s1] = s0;
    }

    // honor the given order: edge m = m-th sides entry. assemble() numbers
    // edges by slot scan order, so renumber via a slot permutation is not
    // needed if we feed pairs in the order they first appear; instead build
    // directly here.
    std::vector<int> he_of_slot(nh, -1);
    for (size_t m = 0; m < sides.size(); ++m) {
        const int s0 = 3 * sides[m][0][0] + sides[m][0][1];
        const int s1 = 3 * sides[m][1][0] + sides[m][1][1];
        he_of_slot[s0] = static_cast<int>(2 * m);
        he_of_slot[s1] = static_cast<int>(2 * m + 1);
    }

    int nv = 0;
    for (const auto& f : faces)
        for (int v : f) nv = std::max(nv, v + 1);

    Triangulation tri;
    tri.num_vertices_ = nv;
    tri.next_.assign(nh, -1);
    tri.origin_.assign(nh, -1);
    tri.face_.assign(nh, -1);
    tri.face_he_.assign(nf, -1);
    tri.vertex_he_.assign(nv, -1);
    for (int f = 0; f < nf; ++f) {
        for (int corner = 0; corner < 3; ++corner) {
            const int s = 3 * f + corner;
            const int h = he_of_slot[s];
            if (h < 0) throw NonManifoldEdge("gluing does not cover every face side");
            tri.next_[h] = he_of_slot[3 * f + (corner + 1) % 3];
            tri.origin_[h] = faces[f][corner];
            tri.face_[h] = f;
            tri.vertex_he_[faces[f][corner]] = h;
        }
        tri.face_he_[f] = he_of_slot[3 * f];
    }
    for (int v = 0; v < nv; ++v)
        if (tri.vertex_he_[v] < 0)
            throw ParseError("vertex " + std::to_string(v) + " appears in no face");
    for (int h = 0; h < nh; ++h)
        if (tri.origin_[h] != tri.dest(tri.twin(h)))
            throw InconsistentOrientation("explicit gluing is not orientation-consistent");
    return tri;
}

Hinge hinge_of(const Triangulation& tri, int e) {
    const int a = 2 * e;
    const int ta = a ^ 1;
    if (tri.face(a) == tri.face(ta))
        throw SelfGluedEdge("hinge_of: edge " + std::to_string(e) +
                            " has the same face on both sides");
    Hinge hg;
    hg.edge = e;
    hg.vi = tri.origin(a);
    hg.vj = tri.origin(ta);
    const int b = tri.next(a);  // j -> k
    const int c = tri.next(b);  // k -> i
    const int d = tri.next(ta); // i -> l
    const int f = tri.next(d);  // l -> j
    hg.vk = tri.origin(c);
    hg.vl = tri.origin(f);
    hg.face_k = tri.face(a);
    hg.face_l = tri.face(ta);
    hg.boundary_he = {b, c, d, f};
    hg.boundary_edge = {tri.edge(b), tri.edge(c), tri.edge(d), tri.edge(f)};
    return hg;
}

} // namespace hypflow
