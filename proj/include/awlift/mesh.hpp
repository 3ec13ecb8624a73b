#pragma once

#include <string>
#include <vector>

#include "awlift/extension.hpp"

namespace awlift {

enum class MeshRegion { Interior, Exterior };

struct MeshVertexAttr {
  Cplx grid_z;            // parameter-plane coordinate ("inf" for z = infinity)
  bool grid_at_infinity = false;
  MeshRegion region = MeshRegion::Interior;
  double margin_t = 0.0;  // interior vertices
  double dilatation = 0.0;  // exterior vertices, 0 when skipped
};

struct MeshOutput {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;  // tri or quad index lists
  std::vector<MeshVertexAttr> attrs;    // parallel to vertices
  int dropped_vertices = 0;
  double seam_gap = 0.0;  // cmd_extend only

  std::string to_obj() const;
  std::string to_ply() const;
  std::string attrs_csv() const;
};

/// Interior surface mesh: center vertex plus n_radial rings of n_angular
/// vertices mapped through the lift; n_radial * n_angular + 1 vertices when
/// nothing degenerates.
MeshOutput surface_mesh(const JetMap& map, const GridParams& grid);

/// Two-sided mesh of surface and reflection with a seam at |z| = 1 +/- 1/n;
/// the exterior side includes the image of z = infinity.  Vertices at the
/// infinity marker are dropped (with their faces) and counted.
MeshOutput extension_mesh(const ExtensionMap& ext, const GridParams& grid);

}  // namespace awlift
