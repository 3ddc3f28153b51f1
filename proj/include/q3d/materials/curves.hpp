#pragma once

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <vector>

namespace q3d {

/// Temperature-dependent material property on [1.9 K, 400 K]: either a
/// closed-form fit or a tabulated curve with monotone piecewise-cubic
/// interpolation. Evaluation clamps the temperature to the curve's range.
class MaterialCurve {
public:
    double operator()(double theta) const;

    double range_min() const { return range_min_; }
    double range_max() const { return range_max_; }

    static MaterialCurve constant(double value);

    /// RRR-parameterized copper resistivity fit (Ohm m).
    static MaterialCurve copper_resistivity(double rrr);
    /// 1 / copper_resistivity (S/m).
    static MaterialCurve copper_conductivity(double rrr);
    /// Wiedemann-Franz thermal conductivity of the copper fraction of a
    /// homogenized wire (W/m/K).
    static MaterialCurve wiedemann_franz_lambda(double rrr, double copper_fraction);
    /// Tabulated curve with monotone cubic (Fritsch-Carlson) interpolation.
    static MaterialCurve table(std::vector<double> grid, std::vector<double> values);

    /// Homogenized NbTi/Cu wire volumetric heat capacity (J/m^3/K).
    static MaterialCurve default_wire_heat_capacity();

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    double range_min_ = 1.9;
    double range_max_ = 400.0;
};

/// Copper resistivity fit used by the closed-form curves (Ohm m).
double copper_resistivity_fit(double theta, double rrr);

}  // namespace q3d
