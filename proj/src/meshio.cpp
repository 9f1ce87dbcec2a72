#include "hypflow/meshio.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hypflow/hypgeom.hpp"

namespace hypflow {

using nlohmann::json;

namespace {

std::string edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return std::to_string(a) + "-" + std::to_string(b);
}

json values_as_keyed_object(const Triangulation& tri, const std::vector<double>& values) {
    json obj = json::object();
    for (int e = 0; e < tri.num_edges(); ++e) {
        const auto [a, b] = tri.edge_vertices(e);
        obj[edge_key(a, b)] = values[e];
    }
    return obj;
}

} // namespace

Triangulation triangulation_of(const MeshFile& mesh) {
    return mesh.has_gluing ? build_from_faces_glued(mesh.faces, mesh.gluing)
                           : build_from_faces(mesh.faces);
}

std::string mesh_to_json(const MeshFile& mesh) {
    json doc;
    doc["format_version"] = mesh.format_version;
    doc["faces"] = mesh.faces;
    doc["decoration"]["radii"] = std::vector<double>(mesh.radii.begin(), mesh.radii.end());

    const char* value_name = mesh.values_are_lengths ? "length" : "inversive";
    if (mesh.has_gluing) {
        json list = json::array();
        for (size_t e = 0; e < mesh.edge_values.size(); ++e) {
            json entry;
            entry["faces"] = mesh.gluing[e];
            entry[value_name] = mesh.edge_values[e];
            list.push_back(entry);
        }
        doc["metric"]["edge_list"] = list;
    } else {
        const Triangulation tri = build_from_faces(mesh.faces);
        doc["metric"][mesh.values_are_lengths ? "lengths" : "inversive_distances"] =
            values_as_keyed_object(tri, mesh.edge_values);
    }

    if (mesh.target)
        doc["target_curvature"] = std::vector<double>(mesh.target->begin(), mesh.target->end());
    if (mesh.alpha) doc["alpha"] = *mesh.alpha;
    return doc.dump(1) + "\n";
}

MeshFile mesh_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& err) {
        throw ParseError(std::string("mesh file is not valid JSON: ") + err.what());
    }

    MeshFile mesh;
    try {
        mesh.format_version = doc.at("format_version").get<int>();
        if (mesh.format_version != 1)
            throw ParseError("unsupported format_version " + std::to_string(mesh.format_version));
        mesh.faces = doc.at("faces").get<std::vector<std::array<int, 3>>>();
        const auto radii = doc.at("decoration").at("radii").get<std::vector<double>>();
        mesh.radii = Eigen::Map<const Vec>(radii.data(), static_cast<Eigen::Index>(radii.size()));

        const json& metric = doc.at("metric");
        if (metric.contains("edge_list")) {
            mesh.has_gluing = true;
            for (const json& entry : metric.at("edge_list")) {
                mesh.gluing.push_back(entry.at("faces").get<std::array<std::array<int, 2>, 2>>());
                if (entry.contains("length")) {
                    mesh.values_are_lengths = true;
                    mesh.edge_values.push_back(entry.at("length").get<double>());
                } else {
                    mesh.edge_values.push_back(entry.at("inversive").get<double>());
                }
            }
        } else {
            const bool lengths = metric.contains("lengths");
            if (!lengths && !metric.contains("inversive_distances"))
                throw ParseError("metric must carry lengths, inversive_distances or edge_list");
            mesh.values_are_lengths = lengths;
            const json& obj = lengths ? metric.at("lengths") : metric.at("inversive_distances");

            const Triangulation tri = build_from_faces(mesh.faces);
            if (!tri.is_simplicial())
                throw ParseError("non-simplicial mesh needs the edge_list metric form");
            mesh.edge_values.resize(tri.num_edges());
            for (int e = 0; e < tri.num_edges(); ++e) {
                const auto [a, b] = tri.edge_vertices(e);
                const std::string key = edge_key(a, b);
                if (!obj.contains(key)) throw ParseError("metric value missing for edge " + key);
                mesh.edge_values[e] = obj.at(key).get<double>();
            }
            if (obj.size() != static_cast<size_t>(tri.num_edges()))
                throw ParseError("metric carries values for unknown edges");
        }

        if (doc.contains("target_curvature")) {
            const auto t = doc.at("target_curvature").get<std::vector<double>>();
            mesh.target = Eigen::Map<const Vec>(t.data(), static_cast<Eigen::Index>(t.size()));
        }
        if (doc.contains("alpha")) mesh.alpha = doc.at("alpha").get<double>();
    } catch (const json::exception& err) {
        throw ParseError(std::string("mesh file schema error: ") + err.what());
    }

    if (mesh.radii.size() == 0 || mesh.faces.empty())
        throw ParseError("mesh file needs faces and decoration radii");
    return mesh;
}

MeshFile read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open mesh file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return mesh_from_json(buf.str());
}

void write_mesh_file(const std::string& path, const MeshFile& mesh) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << mesh_to_json(mesh);
}

ConformalClass class_of(const MeshFile& mesh) {
    Triangulation tri = triangulation_of(mesh);
    if (static_cast<Eigen::Index>(tri.num_vertices()) != mesh.radii.size())
        throw ParseError("radius count does not match vertex count");
    if (mesh.edge_values.size() != static_cast<size_t>(tri.num_edges()))
        throw ParseError("metric value count does not match edge count");
    if (mesh.values_are_lengths)
        return make_class_from_lengths(std::move(tri), mesh.edge_values, mesh.radii);
    return make_class_from_inversive(std::move(tri), mesh.edge_values, mesh.radii);
}

MeshFile mesh_of_state(const ConformalClass& cc, const Vec& h, bool write_lengths,
                       std::optional<Vec> target, std::optional<double> alpha) {
    MeshFile mesh;
    mesh.faces = cc.tri.faces();
    const DecoratedMetric metric = realize(cc, h);
    mesh.radii = metric.radius;
    mesh.values_are_lengths = write_lengths;
    mesh.edge_values = write_lengths ? metric.length : cc.inversive;
    mesh.target = std::move(target);
    mesh.alpha = alpha;

    if (!cc.tri.is_simplicial()) {
        mesh.has_gluing = true;
        mesh.gluing.resize(cc.tri.num_edges());
        // slot of a half-edge inside its face triple
        for (int e = 0; e < cc.tri.num_edges(); ++e) {
            for (int side = 0; side < 2; ++side) {
                const int he = 2 * e + side;
                const int f = cc.tri.face(he);
                const auto hes = cc.tri.face_halfedges(f);
                int slot = 0;
                while (hes[slot] != he) ++slot;
                mesh.gluing[e][side] = {f, slot};
            }
        }
    }
    return mesh;
}

} // namespace hypflow
