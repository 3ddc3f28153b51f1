#include "q3d/fem/structured.hpp"

#include <cmath>
#include <stdexcept>

namespace q3d {

TriMesh2D build_structured_mesh(const std::vector<double>& x_breaks,
                                const std::vector<double>& y_breaks,
                                const std::function<int(double, double)>& region_of_center,
                                std::map<int, RegionInfo> regions) {
    const int nx = static_cast<int>(x_breaks.size()) - 1;
    const int ny = static_cast<int>(y_breaks.size()) - 1;
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("build_structured_mesh: need at least one cell per direction");

    std::vector<Eigen::Vector2d> nodes;
    nodes.reserve((nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) nodes.emplace_back(x_breaks[i], y_breaks[j]);

    const auto node_id = [&](int i, int j) { return j * (nx + 1) + i; };

    std::vector<Triangle> tris;
    tris.reserve(2 * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int region = region_of_center(0.5 * (x_breaks[i] + x_breaks[i + 1]),
                                                0.5 * (y_breaks[j] + y_breaks[j + 1]));
            const int n00 = node_id(i, j), n10 = node_id(i + 1, j);
            const int n01 = node_id(i, j + 1), n11 = node_id(i + 1, j + 1);
            tris.push_back({{n00, n10, n11}, region});
            tris.push_back({{n00, n11, n01}, region});
        }
    }
    return TriMesh2D(std::move(nodes), std::move(tris), std::move(regions));
}

std::vector<double> uniform_breaks(double a, double b, int n) {
    if (n < 1) throw std::invalid_argument("uniform_breaks: need n >= 1");
    std::vector<double> out(n + 1);
    for (int i = 0; i <= n; ++i) out[i] = a + (b - a) * i / n;
    return out;
}

std::vector<double> graded_breaks(double a, double b, int n, double h0) {
    if (n < 1) throw std::invalid_argument("graded_breaks: need n >= 1");
    if (!(h0 > 0.0) || !(b > a)) throw std::invalid_argument("graded_breaks: bad interval");
    const double total = b - a;
    if (n == 1 || h0 * n >= total) return uniform_breaks(a, b, n);

    // Solve h0 (r^n - 1)/(r - 1) = total for the growth ratio r by bisection.
    auto length = [&](double r) { return h0 * (std::pow(r, n) - 1.0) / (r - 1.0); };
    double lo = 1.0 + 1e-12, hi = 2.0;
    while (length(hi) < total) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (length(mid) < total ? lo : hi) = mid;
    }
    const double r = 0.5 * (lo + hi);

    std::vector<double> out(n + 1);
    out[0] = a;
    double h = h0;
    for (int i = 1; i < n; ++i) {
        out[i] = out[i - 1] + h;
        h *= r;
    }
    out[n] = b;
    return out;
}

}  // namespace q3d
