// Minimal triangle-mesh support for the spectral (Barta) audit: a sphere-cap
// triangulation and a cotangent Laplacian with lumped mass.

#ifndef CMPGEO_MESH_HPP
#define CMPGEO_MESH_HPP

#include <Eigen/Dense>
#include <vector>

#include "cmpgeo/spectral.hpp"

namespace cmpgeo {

struct TriMesh {
  Matrix vertices;       // 3 x nv
  Eigen::MatrixXi faces; // 3 x nf
  int vertex_count() const { return static_cast<int>(vertices.cols()); }
  int face_count() const { return static_cast<int>(faces.cols()); }
};

/// Geodesic cap {polar angle <= cap_angle} of the unit sphere, triangulated
/// by rings x sectors with a pole fan.  The last ring is the cap boundary.
TriMesh sphere_cap_mesh(double cap_angle, int rings, int sectors);

/// Mass-lumped cotangent Laplacian applied to per-vertex values
/// (the trace-of-Hessian convention: negative at strict interior maxima).
Vector cotan_laplacian(const TriMesh& mesh, const Vector& u);

/// 1 for vertices on the mesh boundary (edges with a single face).
std::vector<std::uint8_t> mesh_boundary_vertices(const TriMesh& mesh);

}  // namespace cmpgeo

#endif  // CMPGEO_MESH_HPP
