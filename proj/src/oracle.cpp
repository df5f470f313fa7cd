// Free-space quadrature oracles.
//
// Both oracles evaluate a convolution integral over a finite box centered on
// every grid node using Gauss-Legendre panels. Because the box moves with
// the evaluation point, the quadrature nodes sit at fixed offsets s from x,
// and the field value at x - s comes from a 10-point periodic Lagrange
// stencil whose weights depend only on s. Summing weight * kernel(s) *
// stencil(s) over all nodes therefore collapses the quadrature into one
// periodic stencil W over grid offsets, and out[m] = sum_n W[n] f[m + n].
// No transform is involved, so the result is independent of the spectral
// operators it is compared against.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "nsverify/evolution.hpp"
#include "nsverify/parallel.hpp"

namespace nsv {

namespace {

constexpr int kPanelNodes = 8;
constexpr int kStencil = 10;        // Lagrange points, offsets -4..5
constexpr int kStencilLow = -4;
constexpr int kSingularRefinement = 8;

struct Node {
    double x;
    double w;
};

/// 8-point Gauss-Legendre rule mapped to [lo, hi].
void append_panel(std::vector<Node>& out, double lo, double hi) {
    using rule = boost::math::quadrature::gauss<double, kPanelNodes>;
    const auto& abscissa = rule::abscissa();
    const auto& weights = rule::weights();
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
        out.push_back({mid - half * abscissa[i], half * weights[i]});
        out.push_back({mid + half * abscissa[i], half * weights[i]});
    }
}

std::vector<Node> panels(double lo, double hi, int count) {
    std::vector<Node> out;
    const double width = (hi - lo) / count;
    for (int p = 0; p < count; ++p) append_panel(out, lo + p * width, lo + (p + 1) * width);
    return out;
}

/// Lagrange stencil for the value at grid coordinate u (in units of h).
struct Stencil {
    std::array<int, kStencil> index;  // wrapped grid offsets
    std::array<double, kStencil> weight;
};

Stencil lagrange_stencil(double u, int n) {
    const double base = std::floor(u);
    const double frac = u - base;
    Stencil st{};
    for (int l = 0; l < kStencil; ++l) {
        const int ol = l + kStencilLow;
        double w = 1.0;
        for (int k = 0; k < kStencil; ++k) {
            const int ok = k + kStencilLow;
            if (k != l) w *= (frac - ok) / static_cast<double>(ol - ok);
        }
        const long long idx = static_cast<long long>(base) + ol;
        st.index[l] = static_cast<int>(((idx % n) + n) % n);
        st.weight[l] = w;
    }
    return st;
}

std::size_t stride_of(const Grid& g, int axis) {
    std::size_t s = 1;
    for (int a = axis + 1; a < g.dim(); ++a) s *= static_cast<std::size_t>(g.resolution(a));
    return s;
}

/// Half-width of the box in whole panels.
int half_panels(const OracleConfig& cfg) {
    const int per_period = cfg.quadrature_points_per_axis / kPanelNodes;
    return static_cast<int>(std::llround(cfg.truncation_radius * per_period));
}

// ---------------------------------------------------------------------------
// heat oracle: the Gaussian kernel is a product over axes, so the tensor
// quadrature factorises into one periodic 1D stencil per axis.

std::vector<double> heat_stencil(const Grid& g, int axis, double kappa, double t, const OracleConfig& cfg) {
    const int n = g.resolution(axis);
    const double h = g.spacing(axis);
    const double period = g.period(axis);
    const int hp = half_panels(cfg);
    const double width = period / (cfg.quadrature_points_per_axis / kPanelNodes);
    const double norm = 1.0 / (2.0 * std::sqrt(std::numbers::pi * kappa * t));
    std::vector<double> W(n, 0.0);
    for (const Node& node : panels(-hp * width, hp * width, 2 * hp)) {
        const double kernel = norm * std::exp(-node.x * node.x / (4.0 * kappa * t));
        const Stencil st = lagrange_stencil(-node.x / h, n);
        for (int l = 0; l < kStencil; ++l) W[st.index[l]] += node.w * kernel * st.weight[l];
    }
    return W;
}

void apply_axis(std::vector<double>& data, const Grid& g, int axis, const std::vector<double>& W) {
    const int n = g.resolution(axis);
    const std::size_t stride = stride_of(g, axis);
    std::vector<double> line(n), result(n);
    for (std::size_t i = 0; i < data.size(); ++i) {
        if ((i / stride) % n != 0) continue;  // visit each line once, from its first node
        for (int m = 0; m < n; ++m) line[m] = data[i + m * stride];
        for (int m = 0; m < n; ++m) {
            double sum = 0.0;
            for (int k = 0; k < n; ++k) sum += W[k] * line[(m + k) % n];
            result[m] = sum;
        }
        for (int m = 0; m < n; ++m) data[i + m * stride] = result[m];
    }
}

// ---------------------------------------------------------------------------
// pressure-gradient oracle

/// Smooth radial truncation: 1 on the inner half of the ball, C-infinity
/// descent to 0 at u = 1. A sharp cutoff of the 1/r^(n-1) kernel does not
/// converge for axis-aligned modes (the transverse integral tends to
/// sign(s)/2, which never decays), whereas the tapered integral converges
/// faster than any power of the radius.
double taper(double u) {
    if (u <= 0.5) return 1.0;
    if (u >= 1.0) return 0.0;
    const double x = (1.0 - u) / 0.5;  // 1 at the inner edge, 0 at the rim
    const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

/// 10th-order centered first derivative with periodic wrap.
ScalarField central_derivative(const ScalarField& s, int axis) {
    static constexpr std::array<double, 5> c = {5.0 / 6.0, -5.0 / 21.0, 5.0 / 84.0, -5.0 / 504.0, 1.0 / 1260.0};
    const Grid& g = s.grid();
    const int n = g.resolution(axis);
    const std::size_t stride = stride_of(g, axis);
    const double inv_h = 1.0 / g.spacing(axis);
    ScalarField out(g);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int m = static_cast<int>((i / stride) % n);
        const std::size_t base = i - static_cast<std::size_t>(m) * stride;
        double d = 0.0;
        for (int j = 1; j <= 5; ++j)
            d += c[j - 1] * (s[base + static_cast<std::size_t>((m + j) % n) * stride] -
                             s[base + static_cast<std::size_t>((m - j + n * 5) % n) * stride]);
        out[i] = d * inv_h;
    }
    return out;
}

/// Accumulates weight * kernel(s) into the stencils of all components.
class KernelAccumulator {
public:
    KernelAccumulator(const Grid& g) : g_(g), dim_(g.dim()), W_(g.dim(), std::vector<double>(g.size(), 0.0)) {
        const double half_n = 0.5 * dim_;
        coeff_ = std::tgamma(half_n) / (2.0 * std::pow(std::numbers::pi, half_n));
    }

    double coefficient() const { return coeff_; }

    /// value[i] is the already-weighted kernel contribution of node offset s.
    void add(const std::array<double, 3>& s, const std::array<double, 3>& value) {
        std::array<Stencil, 3> st;
        for (int a = 0; a < dim_; ++a) st[a] = lagrange_stencil(-s[a] / g_.spacing(a), g_.resolution(a));
        add(st, value);
    }

    void add(const std::array<Stencil, 3>& st, const std::array<double, 3>& value) {
        if (dim_ == 2) {
            const std::size_t n1 = g_.resolution(1);
            for (int l0 = 0; l0 < kStencil; ++l0) {
                const std::size_t row = static_cast<std::size_t>(st[0].index[l0]) * n1;
                for (int l1 = 0; l1 < kStencil; ++l1) {
                    const double w = st[0].weight[l0] * st[1].weight[l1];
                    const std::size_t idx = row + st[1].index[l1];
                    W_[0][idx] += w * value[0];
                    W_[1][idx] += w * value[1];
                }
            }
            return;
        }
        const std::size_t n1 = g_.resolution(1), n2 = g_.resolution(2);
        for (int l0 = 0; l0 < kStencil; ++l0) {
            for (int l1 = 0; l1 < kStencil; ++l1) {
                const double w01 = st[0].weight[l0] * st[1].weight[l1];
                const std::size_t row = (static_cast<std::size_t>(st[0].index[l0]) * n1 + st[1].index[l1]) * n2;
                for (int l2 = 0; l2 < kStencil; ++l2) {
                    const double w = w01 * st[2].weight[l2];
                    const std::size_t idx = row + st[2].index[l2];
                    W_[0][idx] += w * value[0];
                    W_[1][idx] += w * value[1];
                    W_[2][idx] += w * value[2];
                }
            }
        }
    }

    /// out_i[m] = sum_n W_i[n] source[m + n] (multi-index, periodic).
    VectorField apply(const ScalarField& source) const {
        VectorField out(g_);
        const std::size_t total = g_.size();
        parallel_for(total, [&](std::size_t m) {
            const auto mi = g_.unravel(m);
            std::array<double, 3> sum{0.0, 0.0, 0.0};
            for (std::size_t k = 0; k < total; ++k) {
                const auto ki = g_.unravel(k);
                std::array<int, 3> idx{0, 0, 0};
                for (int a = 0; a < dim_; ++a) idx[a] = (mi[a] + ki[a]) % g_.resolution(a);
                const double v = source[g_.flatten(idx)];
                for (int c = 0; c < dim_; ++c) sum[c] += W_[c][k] * v;
            }
            for (int c = 0; c < dim_; ++c) out[c][m] = sum[c];
        });
        return out;
    }

private:
    const Grid& g_;
    int dim_;
    double coeff_;
    std::vector<std::vector<double>> W_;
};

/// The 2^dim panels around s = 0, integrated face by face with
/// s = t * (width . xi), xi on the face of the unit cube. The Jacobian
/// prod(width) t^(n-1) cancels the |s|^(1-n) singularity exactly.
void add_singular_cube(KernelAccumulator& acc, int dim, const std::array<double, 3>& width) {
    double volume = 1.0;
    for (int a = 0; a < dim; ++a) volume *= width[a];
    const auto t_nodes = panels(0.0, 1.0, kSingularRefinement);
    const auto u_nodes = panels(-1.0, 1.0, kSingularRefinement);
    for (int face_axis = 0; face_axis < dim; ++face_axis) {
        for (double sign : {-1.0, 1.0}) {
            std::array<int, 2> others{};
            for (int a = 0, k = 0; a < dim; ++a)
                if (a != face_axis) others[k++] = a;
            const std::size_t nu = u_nodes.size();
            const std::size_t n_face = dim == 2 ? nu : nu * nu;
            for (std::size_t f = 0; f < n_face; ++f) {
                std::array<double, 3> xi{0.0, 0.0, 0.0};
                xi[face_axis] = sign;
                double w_face = 1.0;
                xi[others[0]] = u_nodes[f % nu].x;
                w_face *= u_nodes[f % nu].w;
                if (dim == 3) {
                    xi[others[1]] = u_nodes[f / nu].x;
                    w_face *= u_nodes[f / nu].w;
                }
                std::array<double, 3> edge{0.0, 0.0, 0.0};
                double r2 = 0.0;
                for (int a = 0; a < dim; ++a) {
                    edge[a] = width[a] * xi[a];
                    r2 += edge[a] * edge[a];
                }
                const double rn = std::pow(r2, 0.5 * dim);
                // kernel * Jacobian, independent of t
                std::array<double, 3> base{0.0, 0.0, 0.0};
                for (int a = 0; a < dim; ++a) base[a] = acc.coefficient() * volume * edge[a] / rn;
                for (const Node& tn : t_nodes) {
                    std::array<double, 3> s{0.0, 0.0, 0.0};
                    for (int a = 0; a < dim; ++a) s[a] = tn.x * edge[a];
                    const double w = w_face * tn.w;
                    acc.add(s, {w * base[0], w * base[1], w * base[2]});
                }
            }
        }
    }
}

void require_stencil_fits(const Grid& g) {
    for (int a = 0; a < g.dim(); ++a)
        if (g.resolution(a) < kStencil)
            throw std::invalid_argument("oracles need at least 10 nodes per axis for their interpolation stencil");
}

}  // namespace

void OracleConfig::validate() const {
    if (!(truncation_radius >= 2.0)) throw std::invalid_argument("oracle truncation radius must be >= 2 periods");
    if (quadrature_points_per_axis < 16 || quadrature_points_per_axis % kPanelNodes != 0)
        throw std::invalid_argument("oracle quadrature points per axis must be >= 16 and a multiple of 8");
}

VectorField free_space_oracle_heat(const VectorField& v0, const FluidParams& fluid, double t,
                                   const OracleConfig& cfg) {
    cfg.validate();
    require_stencil_fits(v0.grid());
    if (!(t > 0.0)) throw std::invalid_argument("heat oracle needs t > 0; the t = 0 limit is the identity");
    const Grid& g = v0.grid();
    std::vector<std::vector<double>> stencils;
    for (int axis = 0; axis < g.dim(); ++axis) stencils.push_back(heat_stencil(g, axis, fluid.kappa, t, cfg));
    std::vector<ScalarField> comps;
    for (int c = 0; c < v0.dim(); ++c) {
        std::vector<double> data(v0[c].values().begin(), v0[c].values().end());
        for (int axis = 0; axis < g.dim(); ++axis) apply_axis(data, g, axis, stencils[axis]);
        comps.emplace_back(g, std::move(data));
    }
    return VectorField(std::move(comps));
}

VectorField free_space_oracle_pressure_gradient(const VectorField& g_minus_f, const OracleConfig& cfg) {
    cfg.validate();
    require_stencil_fits(g_minus_f.grid());
    const Grid& g = g_minus_f.grid();
    const int dim = g.dim();

    // P = div(f - g)
    ScalarField source(g);
    for (int a = 0; a < dim; ++a) source -= central_derivative(g_minus_f[a], a);

    KernelAccumulator acc(g);
    const int hp = half_panels(cfg);
    std::array<double, 3> width{1.0, 1.0, 1.0};
    std::array<std::vector<Node>, 3> nodes;
    std::array<std::vector<Stencil>, 3> node_stencils;
    for (int a = 0; a < dim; ++a) {
        width[a] = g.period(a) / (cfg.quadrature_points_per_axis / kPanelNodes);
        nodes[a] = panels(-hp * width[a], hp * width[a], 2 * hp);
        for (const Node& nd : nodes[a])
            node_stencils[a].push_back(lagrange_stencil(-nd.x / g.spacing(a), g.resolution(a)));
    }
    const std::size_t per_axis = nodes[0].size();
    double radius = hp * width[0];
    for (int a = 1; a < dim; ++a) radius = std::min(radius, hp * width[a]);
    // nodes of the panels touching the origin have panel index hp - 1 or hp
    auto near_origin = [&](std::size_t node) {
        const std::size_t panel = node / kPanelNodes;
        return panel == static_cast<std::size_t>(hp - 1) || panel == static_cast<std::size_t>(hp);
    };

    std::array<std::size_t, 3> count{per_axis, per_axis, dim == 3 ? per_axis : 1};
    for (std::size_t i0 = 0; i0 < count[0]; ++i0) {
        for (std::size_t i1 = 0; i1 < count[1]; ++i1) {
            for (std::size_t i2 = 0; i2 < count[2]; ++i2) {
                if (near_origin(i0) && near_origin(i1) && (dim == 2 || near_origin(i2))) continue;
                const std::array<std::size_t, 3> id{i0, i1, i2};
                std::array<double, 3> s{0.0, 0.0, 0.0};
                double w = 1.0, r2 = 0.0;
                for (int a = 0; a < dim; ++a) {
                    s[a] = nodes[a][id[a]].x;
                    w *= nodes[a][id[a]].w;
                    r2 += s[a] * s[a];
                }
                const double window = taper(std::sqrt(r2) / radius);
                if (window == 0.0) continue;
                const double scale = window * w * acc.coefficient() / std::pow(r2, 0.5 * dim);
                std::array<Stencil, 3> st;
                for (int a = 0; a < dim; ++a) st[a] = node_stencils[a][id[a]];
                acc.add(st, {scale * s[0], scale * s[1], scale * s[2]});
            }
        }
    }
    add_singular_cube(acc, dim, width);
    return acc.apply(source);
}

}  // namespace nsv
