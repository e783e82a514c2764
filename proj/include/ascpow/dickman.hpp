#pragma once

#include <vector>

namespace ascpow {

// Dickman's function: rho(u) = 1 on [0,1], and for u > 1
//   rho(u) = rho(u0) - integral_{u0}^{u} rho(t-1)/t dt.
// Closed form 1 - ln(u) on [1,2]; beyond that, stepwise continuation of the
// defining integral (composite Simpson, step 1e-3, cubic interpolation of the
// already-built history). Absolute accuracy is ~1e-14 while rho is above the
// double-roundoff continuation floor (u up to ~12); past the floor the grid
// is clamped so the returned values stay non-negative and non-increasing.
class DickmanRho {
public:
    explicit DickmanRho(double u_max = 20.0);

    double operator()(double u) const;
    double u_max() const { return u_max_; }

private:
    double grid_value(double u) const;

    double u_max_;
    double step_;
    std::vector<double> grid_; // values at 2 + i*step_
};

// Shared instance over [0, 32]; beyond the built range the end-of-grid value
// is returned (the true rho is far below the continuation floor there).
double dickman_rho(double u);

} // namespace ascpow
