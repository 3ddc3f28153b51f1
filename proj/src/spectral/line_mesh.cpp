#include "q3d/spectral/line_mesh.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace q3d {

SpectralLineMesh SpectralLineMesh::uniform(double z0, double z1, int num_elements, int order) {
    if (num_elements < 1) throw std::invalid_argument("SpectralLineMesh: need K >= 1 elements");
    SpectralLineMesh mesh;
    mesh.breakpoints.resize(num_elements + 1);
    for (int k = 0; k <= num_elements; ++k)
        mesh.breakpoints[k] = z0 + (z1 - z0) * k / num_elements;
    mesh.orders.assign(num_elements, order);
    mesh.validate();
    return mesh;
}

void SpectralLineMesh::validate() const {
    if (orders.empty()) throw std::invalid_argument("SpectralLineMesh: no elements");
    if (breakpoints.size() != orders.size() + 1)
        throw std::invalid_argument("SpectralLineMesh: breakpoints/orders size mismatch");
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k)
        if (!(breakpoints[k] < breakpoints[k + 1]))
            throw std::invalid_argument("SpectralLineMesh: breakpoints not strictly increasing");
    for (int p : orders)
        if (p < 1) throw std::invalid_argument("SpectralLineMesh: element order must be >= 1");
}

int SpectralLineMesh::max_order() const {
    return *std::max_element(orders.begin(), orders.end());
}

int SpectralLineMesh::num_functions() const {
    return std::accumulate(orders.begin(), orders.end(), 1);
}

int SpectralLineMesh::global_index(int k, int q) const {
    if (q == 0) return k;
    if (q == 1) return k + 1;
    int offset = num_elements() + 1;
    for (int j = 0; j < k; ++j) offset += orders[j] - 1;
    return offset + (q - 2);
}

int SpectralLineMesh::element_of(double z) const {
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), z);
    int k = static_cast<int>(it - breakpoints.begin()) - 1;
    return std::clamp(k, 0, num_elements() - 1);
}

}  // namespace q3d
