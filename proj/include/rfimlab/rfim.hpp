#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfimlab/lattice.hpp"
#include "rfimlab/maxflow.hpp"
#include "rfimlab/parallel.hpp"
#include "rfimlab/rng.hpp"
#include "rfimlab/spin.hpp"

namespace rfimlab {

enum class FieldDistribution : std::uint8_t { gaussian, rademacher, uniform_symmetric };

inline const char* to_string(FieldDistribution d) {
    switch (d) {
        case FieldDistribution::gaussian: return "gaussian";
        case FieldDistribution::rademacher: return "rademacher";
        case FieldDistribution::uniform_symmetric: return "uniform-symmetric";
    }
    return "?";
}

inline FieldDistribution field_distribution_from_string(const std::string& s) {
    if (s == "gaussian") return FieldDistribution::gaussian;
    if (s == "rademacher") return FieldDistribution::rademacher;
    if (s == "uniform-symmetric") return FieldDistribution::uniform_symmetric;
    throw std::invalid_argument("unknown field distribution: " + s);
}

struct FieldSpec {
    FieldDistribution distribution = FieldDistribution::gaussian;
    double psi = 1.0; // sub-gaussian scale; gaussian fixes psi = 1
};

// Quenched field values on Lambda(L). Per-vertex values are keyed by the
// vertex coordinate, so sampling is independent of evaluation order.
struct RandomField {
    int L = 0;
    std::vector<double> values;
    FieldDistribution distribution = FieldDistribution::gaussian;
    double psi = 1.0;
    std::uint64_t seed = 0;

    int side() const { return 2 * L + 1; }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y + L) * side() + static_cast<std::size_t>(x + L);
    }
    double value(int x, int y) const { return values[index(x, y)]; }
};

inline double draw_field_value(FieldDistribution dist, std::uint64_t key) {
    CounterRng rng(key);
    switch (dist) {
        case FieldDistribution::gaussian: return rng.next_gaussian();
        case FieldDistribution::rademacher: return rng.next_rademacher();
        case FieldDistribution::uniform_symmetric: return rng.next_symmetric();
    }
    return 0.0;
}

inline RandomField sample_field(int L, const FieldSpec& spec, std::uint64_t seed) {
    if (L < 0) throw std::invalid_argument("sample_field: L < 0");
    RandomField f;
    f.L = L;
    f.distribution = spec.distribution;
    f.psi = spec.distribution == FieldDistribution::gaussian ? 1.0 : spec.psi;
    f.seed = seed;
    f.values.resize(static_cast<std::size_t>(f.side()) * f.side());
    for (int y = -L; y <= L; ++y)
        for (int x = -L; x <= L; ++x)
            f.values[f.index(x, y)] =
                draw_field_value(spec.distribution, derive_seed(seed, {key_of_vertex(x, y)}));
    return f;
}

// Sign convention for the field term of the Hamiltonian.
//   aligning: energy -(eta + eps*h_v) sigma_v; positive field favors +1
//   opposing: energy +eps*h_v sigma_v with eta = 0
enum class FieldConvention : std::uint8_t { aligning, opposing };

struct ModelParams {
    double J = 1.0;
    double epsilon = 0.0;
    double eta = 0.0;
    FieldConvention convention = FieldConvention::aligning;

    void validate() const {
        if (!(J > 0)) throw std::invalid_argument("ModelParams: J must be positive");
        if (epsilon < 0) throw std::invalid_argument("ModelParams: epsilon must be nonnegative");
        if (convention == FieldConvention::opposing && eta != 0.0)
            throw std::invalid_argument("ModelParams: opposing convention requires eta = 0");
    }
};

// Coefficient f_v in H = -J sum sigma sigma + sum_v f_v sigma_v.
inline double field_coefficient(const ModelParams& p, double h) {
    return p.convention == FieldConvention::aligning ? -(p.eta + p.epsilon * h) : p.epsilon * h;
}

// Number of neighbors of (x,y) outside the box (0 in the interior).
inline int outside_degree(int L, int x, int y) {
    int d = 0;
    if (x == L) ++d;
    if (x == -L) ++d;
    if (y == L) ++d;
    if (y == -L) ++d;
    return d;
}

// Hamiltonian over the box: internal nearest-neighbor pairs, coupling of
// boundary-adjacent spins to the fixed boundary value, and the field term.
inline double energy(const SpinConfiguration& sigma, const RandomField& h, const ModelParams& p) {
    p.validate();
    if (sigma.L != h.L) throw std::invalid_argument("energy: box size mismatch");
    const int L = sigma.L;
    const double tau = boundary_sign(sigma.boundary);
    double H = 0.0;
    for (int y = -L; y <= L; ++y) {
        for (int x = -L; x <= L; ++x) {
            int s = sigma.spin(x, y);
            if (x + 1 <= L) H -= p.J * s * sigma.spin(x + 1, y);
            if (y + 1 <= L) H -= p.J * s * sigma.spin(x, y + 1);
            H -= p.J * s * tau * outside_degree(L, x, y);
            H += field_coefficient(p, h.value(x, y)) * s;
        }
    }
    return H;
}

// Exact ground state by reduction to a minimum cut: one node per vertex,
// neighbor arcs of capacity 2J both ways, source/sink arcs carrying the
// positive/negative part of twice the local field (with the boundary
// coupling absorbed into boundary-adjacent vertices). Among degenerate
// minimizers the pointwise-maximal one is returned, obtained from the
// maximal source side of the cut.
inline SpinConfiguration ground_state(const RandomField& h, const ModelParams& p,
                                      Boundary boundary) {
    p.validate();
    const int L = h.L;
    const int side = h.side();
    const int n = side * side;
    const int s_node = n, t_node = n + 1;
    const double tau = boundary_sign(boundary);
    MaxFlow mf(n + 2);
    for (int y = -L; y <= L; ++y) {
        for (int x = -L; x <= L; ++x) {
            int id = static_cast<int>(h.index(x, y));
            if (x + 1 <= L) mf.add_edge(id, static_cast<int>(h.index(x + 1, y)), 2 * p.J, 2 * p.J);
            if (y + 1 <= L) mf.add_edge(id, static_cast<int>(h.index(x, y + 1)), 2 * p.J, 2 * p.J);
            double theta = -field_coefficient(p, h.value(x, y)) +
                           p.J * tau * outside_degree(L, x, y);
            if (theta > 0)
                mf.add_edge(s_node, id, 2 * theta, 0.0);
            else if (theta < 0)
                mf.add_edge(id, t_node, -2 * theta, 0.0);
        }
    }
    mf.solve(s_node, t_node);
    std::vector<char> plus_side = mf.max_source_side();
    SpinConfiguration sigma(L, boundary);
    for (int i = 0; i < n; ++i) sigma.spins[i] = plus_side[i] ? 1 : -1;
    return sigma;
}

// Energy change of flipping every spin of `region`, computed incrementally
// from the region's boundary edges and its field terms.
inline double flip_energy(const SpinConfiguration& sigma, const VertexSet& region,
                          const RandomField& h, const ModelParams& p) {
    p.validate();
    if (sigma.L != h.L) throw std::invalid_argument("flip_energy: box size mismatch");
    const int L = sigma.L;
    bool inside = true;
    region.for_each([&](int x, int y) { inside = inside && sigma.in_box(x, y); });
    if (!inside) throw std::invalid_argument("flip_energy: region not contained in box");
    const double tau = boundary_sign(sigma.boundary);
    double delta = 0.0;
    for (const GridEdge& e : edge_boundary(region).edges) {
        int ax = e.x, ay = e.y;
        int bx = e.horizontal ? e.x + 1 : e.x;
        int by = e.horizontal ? e.y : e.y + 1;
        bool a_in = region.contains(ax, ay);
        int ix = a_in ? ax : bx, iy = a_in ? ay : by;
        int ox = a_in ? bx : ax, oy = a_in ? by : ay;
        double outer = sigma.in_box(ox, oy) ? sigma.spin(ox, oy) : tau;
        delta += 2.0 * p.J * sigma.spin(ix, iy) * outer;
    }
    region.for_each([&](int x, int y) {
        delta -= 2.0 * field_coefficient(p, h.value(x, y)) * sigma.spin(x, y);
    });
    return delta;
}

struct OrderParameterEstimate {
    int L = 0;
    double m_hat = 0.0; // in [0,1]
    int n = 0;
    double ci_half_width = 0.0; // 95%, normal approximation
    std::uint64_t seed = 0;
};

namespace detail {
constexpr std::uint64_t kTagField = 0x8d3f4a11ull;
constexpr std::uint64_t kTagOrderParam = 0x1a2b3c4dull;
constexpr std::uint64_t kTagZeta2 = 0x5e6f7081ull;
} // namespace detail

// m(L) at zero temperature: Monte Carlo average of (sigma0+ - sigma0-)/2
// over independent fields, one ground state per boundary condition.
inline OrderParameterEstimate estimate_order_parameter(int L, const ModelParams& p,
                                                       const FieldSpec& spec, int n,
                                                       std::uint64_t seed, int threads = 0) {
    if (n < 1) throw std::invalid_argument("estimate_order_parameter: n < 1");
    std::vector<double> vals(n, 0.0);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t r) {
        std::uint64_t rs = derive_seed(seed, {detail::kTagOrderParam, static_cast<std::uint64_t>(L),
                                              static_cast<std::uint64_t>(r)});
        RandomField f = sample_field(L, spec, rs);
        SpinConfiguration plus = ground_state(f, p, Boundary::plus);
        SpinConfiguration minus = ground_state(f, p, Boundary::minus);
        vals[r] = 0.5 * (plus.spin(0, 0) - minus.spin(0, 0));
    });
    double sum = 0.0;
    for (double v : vals) sum += v;
    OrderParameterEstimate est;
    est.L = L;
    est.n = n;
    est.seed = seed;
    est.m_hat = std::clamp(sum / n, 0.0, 1.0);
    est.ci_half_width = 1.96 * std::sqrt(est.m_hat * (1.0 - est.m_hat) / n);
    return est;
}

struct CorrelationLengthEstimate {
    double threshold = 0.5;
    bool reached = false;
    int zeta2 = 0; // least probed L with m_hat < threshold, when reached
    std::vector<OrderParameterEstimate> probed;
    double decay_slope = 0.0; // least-squares slope of log m_hat vs L
    bool slope_valid = false;
};

// Probes the schedule in increasing order and stops at the first L whose
// estimate drops below the threshold.
inline CorrelationLengthEstimate estimate_zeta2(const ModelParams& p, const FieldSpec& spec,
                                                double m_threshold,
                                                const std::vector<int>& schedule, int n,
                                                std::uint64_t seed, int threads = 0) {
    if (schedule.empty()) throw std::invalid_argument("estimate_zeta2: empty schedule");
    if (!(m_threshold > 0.0 && m_threshold < 1.0))
        throw std::invalid_argument("estimate_zeta2: threshold outside (0,1)");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw std::invalid_argument("estimate_zeta2: schedule must be strictly increasing");
    CorrelationLengthEstimate out;
    out.threshold = m_threshold;
    for (int L : schedule) {
        std::uint64_t ls = derive_seed(seed, {detail::kTagZeta2, static_cast<std::uint64_t>(L)});
        OrderParameterEstimate est = estimate_order_parameter(L, p, spec, n, ls, threads);
        out.probed.push_back(est);
        if (est.m_hat < m_threshold) {
            out.reached = true;
            out.zeta2 = L;
            break;
        }
    }
    // decay-rate proxy: regression of log m_hat on L over positive estimates
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (const auto& e : out.probed) {
        if (e.m_hat <= 0.0) continue;
        double x = e.L, y = std::log(e.m_hat);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++k;
    }
    if (k >= 2 && sxx * k - sx * sx > 0) {
        out.decay_slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
        out.slope_valid = true;
    }
    return out;
}

} // namespace rfimlab
