#pragma once

#include <Eigen/Dense>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace q3d {

struct Triangle {
    std::array<int, 3> v;
    int region = 0;
};

struct RegionInfo {
    std::string name;
    bool conductor = false;
};

/// 2D triangulation of the cross-section with globally oriented edges.
///
/// Edges run from the lower to the higher node index. Per-triangle edge ids
/// and orientation signs are cached at build time; triangle vertices are
/// reordered counter-clockwise.
class TriMesh2D {
public:
    TriMesh2D(std::vector<Eigen::Vector2d> nodes, std::vector<Triangle> triangles,
              std::map<int, RegionInfo> regions);

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_triangles() const { return static_cast<int>(triangles_.size()); }

    const Eigen::Vector2d& node(int j) const { return nodes_[j]; }
    const Triangle& triangle(int t) const { return triangles_[t]; }
    const std::array<int, 2>& edge(int e) const { return edges_[e]; }
    const std::map<int, RegionInfo>& regions() const { return regions_; }
    const RegionInfo& region(int id) const;

    /// Edge ids of triangle t; side i connects local vertices i and (i+1)%3.
    const std::array<int, 3>& triangle_edges(int t) const { return tri_edges_[t]; }
    /// +1 when side i of triangle t runs along the global edge orientation.
    const std::array<double, 3>& triangle_edge_signs(int t) const { return tri_edge_signs_[t]; }

    double area(int t) const { return areas_[t]; }
    /// Barycentric gradients: column i holds grad lambda_i of triangle t.
    const Eigen::Matrix<double, 2, 3>& barycentric_gradients(int t) const { return grads_[t]; }
    Eigen::Vector2d centroid(int t) const;

    /// Edges with exactly one adjacent triangle.
    const std::vector<int>& boundary_edges() const { return boundary_edges_; }
    bool is_boundary_node(int j) const { return boundary_node_[j] != 0; }

    std::vector<int> triangles_in_regions(const std::vector<int>& region_ids) const;

private:
    void build_geometry();
    void build_edges();

    std::vector<Eigen::Vector2d> nodes_;
    std::vector<Triangle> triangles_;
    std::map<int, RegionInfo> regions_;

    std::vector<std::array<int, 2>> edges_;
    std::vector<std::array<int, 3>> tri_edges_;
    std::vector<std::array<double, 3>> tri_edge_signs_;
    std::vector<double> areas_;
    std::vector<Eigen::Matrix<double, 2, 3>> grads_;
    std::vector<int> boundary_edges_;
    std::vector<char> boundary_node_;
};

}  // namespace q3d
