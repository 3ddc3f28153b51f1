#include "q3d/fem/tri_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace q3d {

TriMesh2D::TriMesh2D(std::vector<Eigen::Vector2d> nodes, std::vector<Triangle> triangles,
                     std::map<int, RegionInfo> regions)
    : nodes_(std::move(nodes)), triangles_(std::move(triangles)), regions_(std::move(regions)) {
    if (nodes_.empty() || triangles_.empty())
        throw std::invalid_argument("TriMesh2D: empty mesh");
    for (const auto& n : nodes_)
        if (!n.allFinite()) throw std::invalid_argument("TriMesh2D: non-finite node coordinate");
    for (const auto& t : triangles_) {
        for (int v : t.v)
            if (v < 0 || v >= num_nodes())
                throw std::invalid_argument("TriMesh2D: vertex index out of range");
        if (!regions_.count(t.region))
            throw std::invalid_argument("TriMesh2D: triangle region id not in region table");
    }
    build_geometry();
    build_edges();
}

const RegionInfo& TriMesh2D::region(int id) const {
    const auto it = regions_.find(id);
    if (it == regions_.end()) throw std::out_of_range("TriMesh2D: unknown region id");
    return it->second;
}

Eigen::Vector2d TriMesh2D::centroid(int t) const {
    const auto& tri = triangles_[t];
    return (nodes_[tri.v[0]] + nodes_[tri.v[1]] + nodes_[tri.v[2]]) / 3.0;
}

void TriMesh2D::build_geometry() {
    // Bounding-box scale for the degeneracy threshold.
    Eigen::Vector2d lo = nodes_[0], hi = nodes_[0];
    for (const auto& n : nodes_) {
        lo = lo.cwiseMin(n);
        hi = hi.cwiseMax(n);
    }
    const double box = std::max((hi - lo).maxCoeff(), 1e-300);

    areas_.resize(triangles_.size());
    grads_.resize(triangles_.size());
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        auto& tri = triangles_[t];
        const auto signed_area = [&]() {
            const Eigen::Vector2d a = nodes_[tri.v[0]];
            const Eigen::Vector2d b = nodes_[tri.v[1]];
            const Eigen::Vector2d c = nodes_[tri.v[2]];
            return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
        };
        double sa = signed_area();
        if (sa < 0) {
            std::swap(tri.v[1], tri.v[2]);
            sa = -sa;
        }
        if (sa < 1e-14 * box * box)
            throw std::invalid_argument("TriMesh2D: degenerate triangle " + std::to_string(t));
        areas_[t] = sa;

        const Eigen::Vector2d a = nodes_[tri.v[0]];
        const Eigen::Vector2d b = nodes_[tri.v[1]];
        const Eigen::Vector2d c = nodes_[tri.v[2]];
        // grad lambda_i = (opposite edge normal) / (2 area), CCW ordering.
        grads_[t].col(0) = Eigen::Vector2d(b.y() - c.y(), c.x() - b.x()) / (2.0 * sa);
        grads_[t].col(1) = Eigen::Vector2d(c.y() - a.y(), a.x() - c.x()) / (2.0 * sa);
        grads_[t].col(2) = Eigen::Vector2d(a.y() - b.y(), b.x() - a.x()) / (2.0 * sa);
    }
}

void TriMesh2D::build_edges() {
    std::map<std::array<int, 2>, int> edge_ids;
    std::vector<int> adjacency_count;
    tri_edges_.resize(triangles_.size());
    tri_edge_signs_.resize(triangles_.size());

    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& tri = triangles_[t];
        for (int i = 0; i < 3; ++i) {
            const int a = tri.v[i];
            const int b = tri.v[(i + 1) % 3];
            const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
            auto it = edge_ids.find(key);
            if (it == edge_ids.end()) {
                it = edge_ids.emplace(key, static_cast<int>(edges_.size())).first;
                edges_.push_back(key);
                adjacency_count.push_back(0);
            }
            tri_edges_[t][i] = it->second;
            tri_edge_signs_[t][i] = (a < b) ? 1.0 : -1.0;
            adjacency_count[it->second] += 1;
        }
    }

    boundary_node_.assign(nodes_.size(), 0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (adjacency_count[e] == 1) {
            boundary_edges_.push_back(static_cast<int>(e));
            boundary_node_[edges_[e][0]] = 1;
            boundary_node_[edges_[e][1]] = 1;
        } else if (adjacency_count[e] != 2) {
            throw std::invalid_argument("TriMesh2D: edge shared by more than two triangles");
        }
    }
}

std::vector<int> TriMesh2D::triangles_in_regions(const std::vector<int>& region_ids) const {
    std::vector<int> out;
    for (int t = 0; t < num_triangles(); ++t)
        if (std::find(region_ids.begin(), region_ids.end(), triangles_[t].region) !=
            region_ids.end())
            out.push_back(t);
    return out;
}

}  // namespace q3d
