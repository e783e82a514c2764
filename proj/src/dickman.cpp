#include "ascpow/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "ascpow/errors.hpp"

namespace ascpow {

namespace {

constexpr double kStep = 1e-3;

double closed_form(double u) {
    if (u <= 1.0) return 1.0;
    return 1.0 - std::log(u); // exact on [1, 2]
}

// 4-point Lagrange interpolation on a uniform grid, offset t in [0,1] from
// the second stencil point.
double cubic(const double* p, double t) {
    double a = p[0], b = p[1], c = p[2], d = p[3];
    return b + t * ((c - a) / 2.0 +
                    t * (a - 2.5 * b + 2.0 * c - 0.5 * d +
                         t * (-0.5 * a + 1.5 * b - 1.5 * c + 0.5 * d)));
}

} // namespace

DickmanRho::DickmanRho(double u_max) : u_max_(std::max(u_max, 2.0)), step_(kStep) {
    auto n = static_cast<std::size_t>(std::ceil((u_max_ - 2.0) / step_)) + 1;
    n = std::max<std::size_t>(n, 5); // keep a full cubic stencil available
    u_max_ = 2.0 + static_cast<double>(n - 1) * step_;
    grid_.resize(n);
    grid_[0] = closed_form(2.0);
    auto history = [this](double u) {
        if (u <= 2.0) return closed_form(u);
        return grid_value(u);
    };
    for (std::size_t i = 1; i < n; ++i) {
        double g = 2.0 + static_cast<double>(i - 1) * step_;
        // rho(g + h) = rho(g) - int_g^{g+h} rho(t-1)/t dt, Simpson
        double f0 = history(g - 1.0) / g;
        double fm = history(g + step_ / 2.0 - 1.0) / (g + step_ / 2.0);
        double f1 = history(g + step_ - 1.0) / (g + step_);
        grid_[i] = grid_[i - 1] - (step_ / 6.0) * (f0 + 4.0 * fm + f1);
        if (grid_[i] < 0.0) grid_[i] = 0.0;
    }
    // Forward continuation in doubles has an absolute noise floor around
    // 1e-17 (roundoff excites the slowly-decaying c/u mode of the delay
    // equation). Enforce the exact shape properties on the stored grid: once
    // the computed values reach the floor they are clamped monotone, and
    // anything below it reads as 0.
    double running = grid_[0];
    for (std::size_t i = 1; i < n; ++i) {
        running = std::min(running, grid_[i]);
        if (running < 1e-17) running = 0.0;
        grid_[i] = running;
    }
}

double DickmanRho::grid_value(double u) const {
    double pos = (u - 2.0) / step_;
    auto i = static_cast<std::ptrdiff_t>(std::floor(pos));
    auto last = static_cast<std::ptrdiff_t>(grid_.size()) - 1;
    if (i < 0) i = 0;
    if (i > last - 1) i = last - 1;
    // Stencil [i-1, i+2] clamped to the grid.
    std::ptrdiff_t base = std::clamp<std::ptrdiff_t>(i - 1, std::ptrdiff_t{0}, last - 3);
    double t = pos - static_cast<double>(base) - 1.0;
    double v = cubic(&grid_[static_cast<std::size_t>(base)], t);
    // cubic interpolation of a monotone table may overshoot; pin the value to
    // the bracketing grid interval
    double lo = grid_[static_cast<std::size_t>(i + 1)];
    double hi = grid_[static_cast<std::size_t>(i)];
    return std::clamp(v, lo, hi);
}

double DickmanRho::operator()(double u) const {
    if (!(u >= 0.0)) throw PreconditionError("dickman rho: u must be >= 0");
    if (u <= 2.0) return closed_form(u);
    if (u > u_max_) {
        throw PreconditionError("dickman rho: u=" + std::to_string(u) +
                                " beyond built range " + std::to_string(u_max_));
    }
    double v = grid_value(u);
    return v < 0.0 ? 0.0 : v;
}

double dickman_rho(double u) {
    if (!(u >= 0.0)) throw PreconditionError("dickman rho: u must be >= 0");
    static const DickmanRho shared(32.0);
    // Beyond the built range the true value sits far below the continuation
    // floor; report the (tiny, monotone) end-of-grid value.
    if (u > shared.u_max()) return shared(shared.u_max());
    return shared(u);
}

} // namespace ascpow
