#include "cmpgeo/mesh.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace cmpgeo {

TriMesh sphere_cap_mesh(double cap_angle, int rings, int sectors) {
  if (!(cap_angle > 0 && cap_angle < std::numbers::pi))
    throw std::invalid_argument("sphere_cap_mesh: cap_angle in (0, pi)");
  if (rings < 2 || sectors < 3) throw std::invalid_argument("sphere_cap_mesh: mesh too coarse");

  TriMesh mesh;
  const int nv = 1 + rings * sectors;
  mesh.vertices.resize(3, nv);
  mesh.vertices.col(0) << 0, 0, 1;  // pole
  for (int i = 1; i <= rings; ++i) {
    const double th = cap_angle * i / rings;
    for (int j = 0; j < sectors; ++j) {
      const double ph = 2.0 * std::numbers::pi * j / sectors;
      mesh.vertices.col(1 + (i - 1) * sectors + j) << std::sin(th) * std::cos(ph),
          std::sin(th) * std::sin(ph), std::cos(th);
    }
  }
  const int nf = sectors + 2 * (rings - 1) * sectors;
  mesh.faces.resize(3, nf);
  int fc = 0;
  auto vid = [&](int ring, int j) { return 1 + (ring - 1) * sectors + (j % sectors); };
  for (int j = 0; j < sectors; ++j) mesh.faces.col(fc++) << 0, vid(1, j), vid(1, j + 1);
  for (int i = 1; i < rings; ++i) {
    for (int j = 0; j < sectors; ++j) {
      mesh.faces.col(fc++) << vid(i, j), vid(i + 1, j), vid(i + 1, j + 1);
      mesh.faces.col(fc++) << vid(i, j), vid(i + 1, j + 1), vid(i, j + 1);
    }
  }
  return mesh;
}

Vector cotan_laplacian(const TriMesh& mesh, const Vector& u) {
  const int nv = mesh.vertex_count();
  if (u.size() != nv) throw std::invalid_argument("cotan_laplacian: value size mismatch");
  Vector acc = Vector::Zero(nv);
  Vector area = Vector::Zero(nv);
  for (int f = 0; f < mesh.face_count(); ++f) {
    const int i = mesh.faces(0, f), j = mesh.faces(1, f), k = mesh.faces(2, f);
    const Eigen::Vector3d a = mesh.vertices.col(i), b = mesh.vertices.col(j),
                          c = mesh.vertices.col(k);
    const Eigen::Vector3d ab = b - a, ac = c - a, bc = c - b;
    const double twice_area = ab.cross(ac).norm();
    if (twice_area < 1e-15) throw std::runtime_error("cotan_laplacian: degenerate face");
    // cot of the angle at each corner
    const double cot_a = ab.dot(ac) / twice_area;
    const double cot_b = (-ab).dot(bc) / twice_area;
    const double cot_c = (-ac).dot(-bc) / twice_area;
    acc[i] += 0.5 * (cot_c * (u[j] - u[i]) + cot_b * (u[k] - u[i]));
    acc[j] += 0.5 * (cot_c * (u[i] - u[j]) + cot_a * (u[k] - u[j]));
    acc[k] += 0.5 * (cot_b * (u[i] - u[k]) + cot_a * (u[j] - u[k]));
    const double third = twice_area / 6.0;
    area[i] += third;
    area[j] += third;
    area[k] += third;
  }
  for (int v = 0; v < nv; ++v) acc[v] /= area[v];
  return acc;
}

std::vector<std::uint8_t> mesh_boundary_vertices(const TriMesh& mesh) {
  std::map<std::pair<int, int>, int> edge_count;
  for (int f = 0; f < mesh.face_count(); ++f) {
    for (int e = 0; e < 3; ++e) {
      int a = mesh.faces(e, f), b = mesh.faces((e + 1) % 3, f);
      if (a > b) std::swap(a, b);
      ++edge_count[{a, b}];
    }
  }
  std::vector<std::uint8_t> mask(mesh.vertex_count(), 0);
  for (const auto& [edge, count] : edge_count) {
    if (count == 1) {
      mask[edge.first] = 1;
      mask[edge.second] = 1;
    }
  }
  return mask;
}

}  // namespace cmpgeo
