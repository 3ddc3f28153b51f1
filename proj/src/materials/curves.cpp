#include "q3d/materials/curves.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace q3d {

double copper_resistivity_fit(double theta, double rrr) {
    // RRR-parameterized fit of copper resistivity vs temperature at zero
    // field, residual plus intrinsic term with Matthiessen interpolation.
    const double rho0 = 1.553e-8 / rrr;
    const double num = 1.171e-17 * std::pow(theta, 4.49);
    const double den =
        1.0 + 4.498e-7 * std::pow(theta, 3.35) * std::exp(-std::pow(50.0 / theta, 6.428));
    const double rho_i = num / den;
    const double rho_i0 = 0.4531 * rho_i * rho0 / (rho_i + rho0);
    return rho0 + rho_i + rho_i0;
}

struct MaterialCurve::Impl {
    std::function<double(double)> eval;

    // Table data (empty for closed-form curves).
    std::vector<double> grid, values, slopes;
};

namespace {

// Fritsch-Carlson monotone cubic slopes.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    std::vector<double> d(n, 0.0), delta(n - 1);
    for (int i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    if (n == 2) return {delta[0], delta[0]};

    d[0] = delta[0];
    d[n - 1] = delta[n - 2];
    for (int i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
            const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // Limit endpoint slopes to preserve monotonicity in the end intervals.
    for (int i : {0, n - 1}) {
        const double del = (i == 0) ? delta[0] : delta[n - 2];
        if (d[i] * del <= 0.0)
            d[i] = 0.0;
        else if (std::abs(d[i]) > 3.0 * std::abs(del))
            d[i] = 3.0 * del;
    }
    return d;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& d, double t) {
    const int n = static_cast<int>(x.size());
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const int i = std::clamp(static_cast<int>(it - x.begin()) - 1, 0, n - 2);
    const double h = x[i + 1] - x[i];
    const double s = (t - x[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
}

}  // namespace

double MaterialCurve::operator()(double theta) const {
    if (!impl_) throw std::logic_error("MaterialCurve: empty curve");
    const double t = std::clamp(theta, range_min_, range_max_);
    return impl_->eval(t);
}

MaterialCurve MaterialCurve::constant(double value) {
    MaterialCurve c;
    auto impl = std::make_shared<Impl>();
    impl->eval = [value](double) { return value; };
    c.impl_ = std::move(impl);
    return c;
}

MaterialCurve MaterialCurve::copper_resistivity(double rrr) {
    if (!(rrr > 1.0)) throw std::invalid_argument("copper_resistivity: RRR must exceed 1");
    MaterialCurve c;
    auto impl = std::make_shared<Impl>();
    impl->eval = [rrr](double t) { return copper_resistivity_fit(t, rrr); };
    c.impl_ = std::move(impl);
    return c;
}

MaterialCurve MaterialCurve::copper_conductivity(double rrr) {
    if (!(rrr > 1.0)) throw std::invalid_argument("copper_conductivity: RRR must exceed 1");
    MaterialCurve c;
    auto impl = std::make_shared<Impl>();
    impl->eval = [rrr](double t) { return 1.0 / copper_resistivity_fit(t, rrr); };
    c.impl_ = std::move(impl);
    return c;
}

MaterialCurve MaterialCurve::wiedemann_franz_lambda(double rrr, double copper_fraction) {
    if (!(copper_fraction > 0.0 && copper_fraction <= 1.0))
        throw std::invalid_argument("wiedemann_franz_lambda: fraction in (0, 1]");
    MaterialCurve c;
    auto impl = std::make_shared<Impl>();
    constexpr double kLorenz = 2.443e-8;  // W Ohm / K^2
    impl->eval = [rrr, copper_fraction](double t) {
        return copper_fraction * kLorenz * t / copper_resistivity_fit(t, rrr);
    };
    c.impl_ = std::move(impl);
    return c;
}

MaterialCurve MaterialCurve::table(std::vector<double> grid, std::vector<double> values) {
    if (grid.size() < 2 || grid.size() != values.size())
        throw std::invalid_argument("MaterialCurve::table: need matching grids of size >= 2");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("MaterialCurve::table: grid not increasing");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("MaterialCurve::table: values must be positive");

    MaterialCurve c;
    c.range_min_ = grid.front();
    c.range_max_ = grid.back();
    auto impl = std::make_shared<Impl>();
    impl->grid = std::move(grid);
    impl->values = std::move(values);
    impl->slopes = pchip_slopes(impl->grid, impl->values);
    auto* raw = impl.get();
    impl->eval = [raw](double t) { return pchip_eval(raw->grid, raw->values, raw->slopes, t); };
    c.impl_ = std::move(impl);
    return c;
}

MaterialCurve MaterialCurve::default_wire_heat_capacity() {
    // Homogenized 60/40 Cu/NbTi volumetric heat capacity.
    static const std::vector<double> grid = {1.9, 3,  4,  6,   8,   10,  14,  20,  30,  40,
                                             60,  80, 100, 140, 180, 220, 260, 300, 350, 400};
    static const std::vector<double> values = {
        8.44e2,  1.503e3, 2.299e3, 4.712e3, 8.642e3, 1.459e4, 3.458e4,
        9.17e4,  2.729e5, 5.393e5, 1.138e6, 1.641e6, 2.007e6, 2.45e6,
        2.686e6, 2.826e6, 2.917e6, 2.982e6, 3.043e6, 3.09e6};
    return table(grid, values);
}

}  // namespace q3d
