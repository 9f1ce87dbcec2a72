#pragma once

#include <optional>
#include <string>

#include "hypflow/metric.hpp"

namespace hypflow {

// In-memory form of the JSON mesh file. The metric is carried either as
// inversive distances or as lengths, always indexed by edge id of the
// triangulation built from `faces` (+ explicit gluing when present).
struct MeshFile {
    int format_version = 1;
    std::vector<std::array<int, 3>> faces;
    Vec radii;
    std::vector<double> edge_values;
    bool values_are_lengths = false;
    // explicit twin pairing for non-simplicial meshes: {{face,slot},{face,slot}} per edge
    std::vector<std::array<std::array<int, 2>, 2>> gluing;
    bool has_gluing = false;
    std::optional<Vec> target;
    std::optional<double> alpha;
};

MeshFile read_mesh_file(const std::string& path);
void write_mesh_file(const std::string& path, const MeshFile& mesh);

std::string mesh_to_json(const MeshFile& mesh);
MeshFile mesh_from_json(const std::string& text);

Triangulation triangulation_of(const MeshFile& mesh);

// conformal class with the file's decoration as the reference metric
ConformalClass class_of(const MeshFile& mesh);

// decorated state (class at factor h) serialized back out
MeshFile mesh_of_state(const ConformalClass& cc, const Vec& h, bool write_lengths,
                       std::optional<Vec> target = std::nullopt,
                       std::optional<double> alpha = std::nullopt);

} // namespace hypflow
