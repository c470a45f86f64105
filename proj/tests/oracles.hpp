#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Mat = std::array<std::array<cd, 2>, 2>;

inline Mat matmul(const Mat& a, const Mat& b)
{
    Mat c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return c;
}

inline Mat polar(double theta, double pa, double pb)
{
    const cd a = std::cosh(theta) * std::exp(cd(0, pa));
    const cd b = std::sinh(theta) * std::exp(cd(0, pb));
    return {{{a, b}, {std::conj(b), std::conj(a)}}};
}

/// Piece of a potential profile: a slab [x0, x0 + width) of height v, or a
/// delta spike of the given strength at x0 (width 0).
struct Piece {
    double x0;
    double width;
    double v;
    bool spike = false;
};

/// Left-side amplitudes (A, B) of psi = A e^{ikx} + B e^{-ikx} when the
/// right side carries the pure outgoing wave e^{ikx}.
/// Integrates -psi'' + V psi = k^2 psi from right to left with classical RK4.
struct LeftAmplitudes {
    cd a;
    cd b;
    double transmission() const { return 1.0 / std::norm(a); }
    double reflection() const { return std::norm(b) / std::norm(a); }
};

inline LeftAmplitudes integrate(std::vector<Piece> pieces, double k, double h = 2e-4)
{
    const double e = k * k;
    double x_right = -1e300;
    double x_left = 1e300;
    for (const auto& p : pieces) {
        x_right = std::max(x_right, p.x0 + p.width);
        x_left = std::min(x_left, p.x0);
    }
    cd psi = std::exp(cd(0, k * x_right));
    cd dpsi = cd(0, k) * psi;

    auto potential = [&](double x) {
        for (const auto& p : pieces)
            if (!p.spike && x >= p.x0 && x < p.x0 + p.width) return p.v;
        return 0.0;
    };

    // Boundaries between which V is constant.
    std::vector<double> marks{x_left, x_right};
    for (const auto& p : pieces) {
        marks.push_back(p.x0);
        marks.push_back(p.x0 + p.width);
    }
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    for (std::size_t m = marks.size() - 1; m > 0; --m) {
        const double hi = marks[m];
        const double lo = marks[m - 1];
        // Spikes sitting on `hi`: psi' jumps by strength * psi going leftwards.
        for (const auto& p : pieces)
            if (p.spike && p.x0 == hi) dpsi -= p.v * psi;
        const double v = potential(0.5 * (lo + hi));
        const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) / h)));
        const double dx = -(hi - lo) / steps;
        const double c = v - e;
        for (int s = 0; s < steps; ++s) {
            // y = (psi, psi'), y' = (psi', c psi); constant c inside the slab.
            const cd k1p = dpsi, k1d = c * psi;
            const cd k2p = dpsi + 0.5 * dx * k1d, k2d = c * (psi + 0.5 * dx * k1p);
            const cd k3p = dpsi + 0.5 * dx * k2d, k3d = c * (psi + 0.5 * dx * k2p);
            const cd k4p = dpsi + dx * k3d, k4d = c * (psi + dx * k3p);
            psi += dx / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            dpsi += dx / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        }
    }
    for (const auto& p : pieces)
        if (p.spike && p.x0 == marks.front()) dpsi -= p.v * psi;

    const double x = marks.front();
    const cd ep = std::exp(cd(0, k * x));
    const cd em = std::exp(cd(0, -k * x));
    // psi = A e^{ikx} + B e^{-ikx}, psi' = ik (A e^{ikx} - B e^{-ikx}).
    const cd a = 0.5 * (psi + dpsi / cd(0, k)) / ep;
    const cd b = 0.5 * (psi - dpsi / cd(0, k)) / em;
    return {a, b};
}

/// Textbook transmission through a single square barrier.
inline double square_barrier_t(double v, double width, double k)
{
    const double e = k * k;
    if (e < v) {
        const double q = std::sqrt(v - e);
        const double s = std::sinh(q * width);
        return 1.0 / (1.0 + v * v * s * s / (4.0 * e * (v - e)));
    }
    if (e > v) {
        const double q = std::sqrt(e - v);
        const double s = std::sin(q * width);
        return 1.0 / (1.0 + v * v * s * s / (4.0 * e * (e - v)));
    }
    return 1.0 / (1.0 + e * width * width / 4.0);
}

} // namespace oracle
