// Shared helpers for the test suites: seeded generators of band-limited
// periodic fields.
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "nsverify/fields.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// One term c * trig(pi * m . x) of a trigonometric polynomial.
struct Mode {
    std::array<int, 3> m{};
    double amplitude = 0.0;
    bool sine = false;
};

/// Random trigonometric polynomial with |m_i| <= max_mode and nonzero m.
inline std::vector<Mode> random_modes(Rng& rng, int dim, int count, int max_mode) {
    std::uniform_int_distribution<int> pick(-max_mode, max_mode);
    std::vector<Mode> modes;
    while (static_cast<int>(modes.size()) < count) {
        Mode md;
        bool zero = true;
        for (int a = 0; a < dim; ++a) {
            md.m[a] = pick(rng);
            zero = zero && md.m[a] == 0;
        }
        if (zero) continue;
        md.amplitude = uniform(rng, -1.0, 1.0);
        md.sine = rng() % 2 == 0;
        modes.push_back(md);
    }
    return modes;
}

inline double phase(const Mode& md, const std::array<double, 3>& x) {
    return std::numbers::pi * (md.m[0] * x[0] + md.m[1] * x[1] + md.m[2] * x[2]);
}

inline double eval_modes(const std::vector<Mode>& modes, const std::array<double, 3>& x) {
    double s = 0.0;
    for (const auto& md : modes) s += md.amplitude * (md.sine ? std::sin(phase(md, x)) : std::cos(phase(md, x)));
    return s;
}

/// Analytic d/dx_axis of eval_modes.
inline double eval_modes_dx(const std::vector<Mode>& modes, const std::array<double, 3>& x, int axis) {
    double s = 0.0;
    for (const auto& md : modes) {
        const double k = std::numbers::pi * md.m[axis];
        s += md.amplitude * k * (md.sine ? std::cos(phase(md, x)) : -std::sin(phase(md, x)));
    }
    return s;
}

inline nsv::ScalarField random_scalar(Rng& rng, const nsv::Grid& g, int max_mode = 3, int count = 6) {
    const auto modes = random_modes(rng, g.dim(), count, max_mode);
    return nsv::ScalarField::from_function(g, [&](const auto& x) { return eval_modes(modes, x); });
}

inline nsv::VectorField random_vector(Rng& rng, const nsv::Grid& g, int max_mode = 3, int count = 6) {
    std::vector<nsv::ScalarField> comps;
    for (int c = 0; c < g.dim(); ++c) comps.push_back(random_scalar(rng, g, max_mode, count));
    return nsv::VectorField(std::move(comps));
}

}  // namespace testing
