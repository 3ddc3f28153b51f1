#include "q3d/spectral/chebyshev.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace q3d {

double chebyshev(int m, double x) {
    if (m < 0) throw std::domain_error("chebyshev: negative order");
    if (!(std::abs(x) <= 1.0 + 1e-12)) throw std::domain_error("chebyshev: x outside [-1, 1]");
    if (m == 0) return 1.0;
    double t0 = 1.0, t1 = x;
    for (int k = 2; k <= m; ++k) {
        const double t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

Eigen::VectorXd chebyshev_points(int M) {
    if (M < 0) throw std::invalid_argument("chebyshev_points: negative order");
    Eigen::VectorXd x(M + 1);
    if (M == 0) {
        x[0] = 1.0;
        return x;
    }
    for (int j = 0; j <= M; ++j) x[j] = std::cos(M_PI * j / M);
    return x;
}

Eigen::VectorXd chebyshev_coeffs(const Eigen::VectorXd& samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 1) throw std::invalid_argument("chebyshev_coeffs: need at least one sample");
    if (n == 1) return samples;

    const int M = n - 1;
    std::vector<double> in(samples.data(), samples.data() + n), out(n);

    // FFTW planning is not reentrant; execution of a fresh per-call plan is.
    {
        static std::mutex plan_mutex;
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_plan plan =
            fftw_plan_r2r_1d(n, in.data(), out.data(), FFTW_REDFT00, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    Eigen::VectorXd coeffs(n);
    for (int m = 0; m <= M; ++m) {
        const double cm = (m == 0 || m == M) ? 2.0 : 1.0;
        coeffs[m] = out[m] / (M * cm);
    }
    return coeffs;
}

Eigen::VectorXd chebyshev_coeffs_direct(const Eigen::VectorXd& samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 1) throw std::invalid_argument("chebyshev_coeffs_direct: need at least one sample");
    if (n == 1) return samples;

    const int M = n - 1;
    Eigen::VectorXd coeffs(n);
    for (int m = 0; m <= M; ++m) {
        // Same sum REDFT00 computes, evaluated term by term.
        double s = samples[0] + ((m % 2 == 0) ? samples[M] : -samples[M]);
        for (int j = 1; j < M; ++j) s += 2.0 * samples[j] * std::cos(M_PI * j * m / M);
        const double cm = (m == 0 || m == M) ? 2.0 : 1.0;
        coeffs[m] = s / (M * cm);
    }
    return coeffs;
}

double chebyshev_eval(const Eigen::VectorXd& coeffs, double x) {
    const int n = static_cast<int>(coeffs.size());
    if (n == 0) return 0.0;
    double b1 = 0.0, b2 = 0.0;
    for (int k = n - 1; k >= 1; --k) {
        const double b0 = coeffs[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return coeffs[0] + x * b1 - b2;
}

}  // namespace q3d
