#include "awlift/mesh.hpp"

#include <cmath>
#include <optional>

#include "awlift/parallel.hpp"

namespace awlift {

namespace {

struct RawVertex {
  std::optional<Vec3> position;  // empty: degenerate / at infinity
  MeshVertexAttr attr;
};

MeshOutput finalize(std::vector<RawVertex> raw, std::vector<std::vector<int>> faces) {
  MeshOutput out;
  std::vector<int> remap(raw.size(), -1);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].position) {
      remap[i] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(*raw[i].position);
      out.attrs.push_back(raw[i].attr);
    } else {
      ++out.dropped_vertices;
    }
  }
  for (auto& face : faces) {
    bool keep = true;
    for (int& idx : face) {
      const int m = remap[static_cast<std::size_t>(idx)];
      if (m < 0) {
        keep = false;
        break;
      }
      idx = m;
    }
    if (keep) out.faces.push_back(std::move(face));
  }
  return out;
}

void ring_faces(std::vector<std::vector<int>>& faces, int ring_a_start, int ring_b_start,
                int n_angular) {
  for (int j = 0; j < n_angular; ++j) {
    const int jn = (j + 1) % n_angular;
    faces.push_back({ring_a_start + j, ring_b_start + j, ring_b_start + jn, ring_a_start + jn});
  }
}

void fan_faces(std::vector<std::vector<int>>& faces, int apex, int ring_start, int n_angular,
               bool apex_first) {
  for (int j = 0; j < n_angular; ++j) {
    const int jn = (j + 1) % n_angular;
    if (apex_first)
      faces.push_back({apex, ring_start + j, ring_start + jn});
    else
      faces.push_back({ring_start + jn, ring_start + j, apex});
  }
}

}  // namespace

MeshOutput surface_mesh(const JetMap& map, const GridParams& grid) {
  grid.validate();
  const int n_r = grid.n_radial, n_a = grid.n_angular;

  std::vector<Cplx> zs;
  zs.reserve(1 + static_cast<std::size_t>(n_r) * n_a);
  zs.emplace_back(0.0, 0.0);
  for (int i = 1; i <= n_r; ++i) {
    const double r = grid.r_max * i / n_r;
    for (int j = 0; j < n_a; ++j) {
      const double th = 2.0 * M_PI * j / n_a;
      zs.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  }

  std::vector<RawVertex> raw(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) {
    RawVertex& v = raw[i];
    v.attr.grid_z = zs[i];
    v.attr.region = MeshRegion::Interior;
    try {
      v.position = lift_point(map, zs[i]);
      const SigmaData s = sigma_at(map, zs[i]);
      const Cplx sf = 2.0 * (s.sigma_zz - s.sigma_z * s.sigma_z);
      const double one_m = 1.0 - std::norm(zs[i]);
      v.attr.margin_t = 0.5 * one_m * one_m * (std::abs(sf) + s.laplacian);
    } catch (const std::exception&) {
      v.position.reset();
    }
  });

  std::vector<std::vector<int>> faces;
  fan_faces(faces, 0, 1, n_a, true);
  for (int i = 1; i < n_r; ++i)
    ring_faces(faces, 1 + (i - 1) * n_a, 1 + i * n_a, n_a);
  return finalize(std::move(raw), std::move(faces));
}

MeshOutput extension_mesh(const ExtensionMap& ext, const GridParams& grid) {
  grid.validate();
  const int n_r = grid.n_radial, n_a = grid.n_angular;
  const double seam = 1.0 / n_r;
  const double r_in_max = 1.0 - seam;
  const double r_out_min = 1.0 + seam;

  struct GridPoint {
    Cplx z;
    bool at_inf = false;
    MeshRegion region = MeshRegion::Interior;
  };
  std::vector<GridPoint> gps;
  gps.push_back({Cplx(0.0), false, MeshRegion::Interior});
  for (int i = 1; i <= n_r; ++i) {
    const double r = r_in_max * i / n_r;
    for (int j = 0; j < n_a; ++j) {
      const double th = 2.0 * M_PI * j / n_a;
      gps.push_back({Cplx(r * std::cos(th), r * std::sin(th)), false, MeshRegion::Interior});
    }
  }
  const int exterior_start = static_cast<int>(gps.size());
  for (int i = 0; i < n_r; ++i) {
    const double r = n_r > 1 ? r_out_min + (grid.exterior_r_max - r_out_min) * i / (n_r - 1)
                             : r_out_min;
    for (int j = 0; j < n_a; ++j) {
      const double th = 2.0 * M_PI * j / n_a;
      gps.push_back({Cplx(r * std::cos(th), r * std::sin(th)), false, MeshRegion::Exterior});
    }
  }
  const int inf_index = static_cast<int>(gps.size());
  gps.push_back({Cplx(0.0), true, MeshRegion::Exterior});

  std::vector<RawVertex> raw(gps.size());
  parallel_for(gps.size(), [&](std::size_t i) {
    RawVertex& v = raw[i];
    v.attr.grid_z = gps[i].z;
    v.attr.grid_at_infinity = gps[i].at_inf;
    v.attr.region = gps[i].region;
    try {
      const Point3OrInf p = gps[i].at_inf ? ext.eval_infinity() : ext.eval(gps[i].z);
      if (!p.finite_point()) return;
      v.position = p.p;
      if (gps[i].region == MeshRegion::Interior) {
        const SigmaData s = sigma_at(ext.map(), gps[i].z);
        const Cplx sf = 2.0 * (s.sigma_zz - s.sigma_z * s.sigma_z);
        const double one_m = 1.0 - std::norm(gps[i].z);
        v.attr.margin_t = 0.5 * one_m * one_m * (std::abs(sf) + s.laplacian);
      } else if (!gps[i].at_inf) {
        if (const auto d = dilatation_at(ext, gps[i].z)) v.attr.dilatation = d->ratio;
      }
    } catch (const std::exception&) {
      v.position.reset();
    }
  });

  std::vector<std::vector<int>> faces;
  fan_faces(faces, 0, 1, n_a, true);
  for (int i = 1; i < n_r; ++i)
    ring_faces(faces, 1 + (i - 1) * n_a, 1 + i * n_a, n_a);
  for (int i = 0; i + 1 < n_r; ++i)
    ring_faces(faces, exterior_start + i * n_a, exterior_start + (i + 1) * n_a, n_a);
  fan_faces(faces, inf_index, exterior_start + (n_r - 1) * n_a, n_a, false);

  MeshOutput out = finalize(std::move(raw), std::move(faces));
  out.seam_gap = boundary_gap(ext, seam);
  return out;
}

std::string MeshOutput::to_obj() const {
  std::string s;
  s += "# vertices: " + std::to_string(vertices.size()) +
       ", dropped: " + std::to_string(dropped_vertices) + "\n";
  for (const Vec3& v : vertices) {
    s += "v ";
    s += format_double(v.x());
    s += ' ';
    s += format_double(v.y());
    s += ' ';
    s += format_double(v.z());
    s += '\n';
  }
  for (const auto& f : faces) {
    s += 'f';
    for (int idx : f) {
      s += ' ';
      s += std::to_string(idx + 1);
    }
    s += '\n';
  }
  return s;
}

std::string MeshOutput::to_ply() const {
  std::string s = "ply\nformat ascii 1.0\n";
  s += "element vertex " + std::to_string(vertices.size()) + "\n";
  s += "property float x\nproperty float y\nproperty float z\n";
  s += "element face " + std::to_string(faces.size()) + "\n";
  s += "property list uchar int vertex_indices\nend_header\n";
  for (const Vec3& v : vertices) {
    s += format_double(v.x());
    s += ' ';
    s += format_double(v.y());
    s += ' ';
    s += format_double(v.z());
    s += '\n';
  }
  for (const auto& f : faces) {
    s += std::to_string(f.size());
    for (int idx : f) {
      s += ' ';
      s += std::to_string(idx);
    }
    s += '\n';
  }
  return s;
}

std::string MeshOutput::attrs_csv() const {
  std::string s = "index,z_re,z_im,region,margin_t,dilatation\n";
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    const MeshVertexAttr& a = attrs[i];
    s += std::to_string(i);
    s += ',';
    if (a.grid_at_infinity) {
      s += "inf,inf,";
    } else {
      s += format_double(a.grid_z.real());
      s += ',';
      s += format_double(a.grid_z.imag());
      s += ',';
    }
    s += a.region == MeshRegion::Interior ? "interior" : "exterior";
    s += ',';
    s += a.region == MeshRegion::Interior ? format_double(a.margin_t) : std::string();
    s += ',';
    s += a.region == MeshRegion::Exterior && !a.grid_at_infinity ? format_double(a.dilatation)
                                                                 : std::string();
    s += '\n';
  }
  return s;
}

}  // namespace awlift
