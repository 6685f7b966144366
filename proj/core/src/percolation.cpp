#include "softcircuit/electromech/percolation.hpp"

#include "softcircuit/error.hpp"
#include "softcircuit/random.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

namespace softcircuit::electromech {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::uint32_t> parent_;
};

enum class Role : std::uint8_t { interior, source, sink };

void validate_grid(std::span<const double> grid) {
    require(!grid.empty(), "strain grid is empty");
    require(grid.front() == 0.0, "strain grid must start at 0");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require(std::isfinite(grid[i]), "strain grid contains a non-finite value");
        if (i > 0) require(grid[i] > grid[i - 1], "strain grid must be strictly increasing");
    }
}

std::size_t broken_count(const PercolationNetwork& network, double strain) {
    return static_cast<std::size_t>(std::count_if(
        network.bonds.begin(), network.bonds.end(),
        [strain](const Bond& b) { return b.occupied && !b.conducts_at(strain); }));
}

double affine_factor(double strain) { return (1.0 + strain) * (1.0 + strain); }

}  // namespace

void DamageModelParams::validate() const {
    require(positive_finite(break_strain_median), "break_strain_median must be > 0");
    require(positive_finite(break_strain_shape), "break_strain_shape must be > 0");
    require(lm_bridge_fraction >= 0.0 && lm_bridge_fraction <= 1.0,
            "lm_bridge_fraction must lie in [0, 1]");
    require(positive_finite(lm_break_strain_median), "lm_break_strain_median must be > 0");
    require(positive_finite(lm_break_strain_shape), "lm_break_strain_shape must be > 0");
}

// Medians come from calibrate_median on a 32x32 lattice at p = 0.767 with
// seeds 1..20 and a 0.005 strain step (see `softcircuit trace calibrate`).
// Targets are the median measured failure strain of each ink: 0.283 for
// Ag-WPU (shapes fixed at 0.30) and 2.22 for Ag-EGaIn-WPU (q fixed at 0.9).
DamageModelParams DamageModelParams::ag_wpu() {
    return {.break_strain_median = 0.318,
            .break_strain_shape = 0.30,
            .lm_bridge_fraction = 0.0,
            .lm_break_strain_median = 3.0,
            .lm_break_strain_shape = 0.30};
}

DamageModelParams DamageModelParams::biphasic() {
    DamageModelParams p = ag_wpu();
    p.lm_bridge_fraction = 0.90;
    p.lm_break_strain_median = 2.825;
    return p;
}

std::size_t PercolationNetwork::occupied_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(bonds.begin(), bonds.end(), [](const Bond& b) { return b.occupied; }));
}

PercolationNetwork build_network(std::size_t rows, std::size_t cols, double occupancy,
                                 const DamageModelParams& params, std::uint64_t seed,
                                 double unit_bond_conductance) {
    require(rows >= 2 && cols >= 2, "lattice must be at least 2x2");
    require(rows * cols <= std::size_t{1} << 30, "lattice too large");
    require(occupancy >= 0.0 && occupancy <= 1.0, "occupancy must lie in [0, 1]");
    require(positive_finite(unit_bond_conductance), "unit_bond_conductance must be > 0");
    params.validate();

    PercolationNetwork net;
    net.rows = rows;
    net.cols = cols;
    net.bond_occupancy = occupancy;
    net.unit_bond_conductance = unit_bond_conductance;
    net.seed = seed;
    net.params = params;
    net.bonds.reserve(rows * (cols - 1) + (rows - 1) * cols);

    Rng rng(seed);
    auto add_bond = [&](std::uint32_t a, std::uint32_t b) {
        // Fixed draw order per bond: occupancy, Ag break, bridge, LM break.
        const double u_occ = rng.uniform();
        const double z_break = rng.normal();
        const double u_lm = rng.uniform();
        const double z_lm = rng.normal();

        Bond bond;
        bond.node_a = a;
        bond.node_b = b;
        bond.occupied = u_occ < occupancy;
        if (bond.occupied) {
            bond.break_strain =
                params.break_strain_median * std::exp(params.break_strain_shape * z_break);
            bond.lm_bridged = u_lm < params.lm_bridge_fraction;
            if (bond.lm_bridged) {
                bond.lm_break_strain = std::max(
                    bond.break_strain,
                    params.lm_break_strain_median * std::exp(params.lm_break_strain_shape * z_lm));
            }
        }
        net.bonds.push_back(bond);
    };

    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) add_bond(net.node(r, c), net.node(r, c + 1));
            if (r + 1 < rows) add_bond(net.node(r, c), net.node(r + 1, c));
        }
    }
    return net;
}

std::optional<double> solve_conductance(const ResistorGraph& graph) {
    const std::size_t n = graph.node_count;
    require(!graph.source.empty() && !graph.sink.empty(), "both terminals need at least one node");

    std::vector<Role> role(n, Role::interior);
    for (auto s : graph.source) {
        require(s < n, "source node out of range");
        role[s] = Role::source;
    }
    for (auto t : graph.sink) {
        require(t < n, "sink node out of range");
        require(role[t] != Role::source, "node assigned to both terminals");
        role[t] = Role::sink;
    }

    DisjointSets sets(n);
    for (auto s : graph.source) sets.unite(s, graph.source.front());
    for (auto t : graph.sink) sets.unite(t, graph.sink.front());
    for (const auto& e : graph.edges) {
        require(e.a < n && e.b < n, "edge endpoint out of range");
        require(positive_finite(e.conductance), "edge conductance must be > 0");
        sets.unite(e.a, e.b);
    }
    const std::uint32_t spanning = sets.find(graph.source.front());
    if (spanning != sets.find(graph.sink.front())) return std::nullopt;

    // Unknowns: interior nodes of the spanning cluster. Everything else is
    // either pinned or carries no current.
    std::vector<std::int64_t> unknown(n, -1);
    Eigen::Index m = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (role[i] == Role::interior && sets.find(i) == spanning) unknown[i] = m++;
    }

    Eigen::VectorXd potential;
    if (m > 0) {
        std::vector<Eigen::Triplet<double>> triplets;
        triplets.reserve(graph.edges.size() * 4);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
        for (const auto& e : graph.edges) {
            if (e.a == e.b) continue;
            const auto ua = unknown[e.a];
            const auto ub = unknown[e.b];
            const double g = e.conductance;
            if (ua >= 0) {
                triplets.emplace_back(ua, ua, g);
                if (ub >= 0) triplets.emplace_back(ua, ub, -g);
                else if (role[e.b] == Role::source) rhs[ua] += g;
            }
            if (ub >= 0) {
                triplets.emplace_back(ub, ub, g);
                if (ua >= 0) triplets.emplace_back(ub, ua, -g);
                else if (role[e.a] == Role::source) rhs[ub] += g;
            }
        }
        Eigen::SparseMatrix<double> laplacian(m, m);
        laplacian.setFromTriplets(triplets.begin(), triplets.end());

        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(laplacian);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("nodal system factorization failed");
        }
        potential = solver.solve(rhs);
    }

    auto voltage = [&](std::uint32_t node) -> double {
        if (role[node] == Role::source) return 1.0;
        if (role[node] == Role::sink) return 0.0;
        return unknown[node] >= 0 ? potential[unknown[node]] : 0.0;
    };

    double current = 0.0;
    for (const auto& e : graph.edges) {
        const bool a_src = role[e.a] == Role::source;
        const bool b_src = role[e.b] == Role::source;
        if (a_src == b_src) continue;
        const std::uint32_t other = a_src ? e.b : e.a;
        current += e.conductance * (1.0 - voltage(other));
    }
    return current;
}

ResistorGraph to_resistor_graph(const PercolationNetwork& network, double strain) {
    ResistorGraph graph;
    graph.node_count = network.node_count();
    for (const auto& b : network.bonds) {
        if (b.conducts_at(strain)) {
            graph.edges.push_back({b.node_a, b.node_b, network.unit_bond_conductance});
        }
    }
    for (std::size_t r = 0; r < network.rows; ++r) {
        graph.source.push_back(network.node(r, 0));
        graph.sink.push_back(network.node(r, network.cols - 1));
    }
    return graph;
}

std::optional<double> solve_conductance(const PercolationNetwork& network, double strain) {
    return solve_conductance(to_resistor_graph(network, strain));
}

std::vector<double> make_strain_grid(double stop, double step, double start) {
    require(std::isfinite(start) && start >= 0.0, "grid start must be >= 0");
    require(positive_finite(step), "grid step must be > 0");
    require(std::isfinite(stop) && stop >= start, "grid stop must be >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = start + static_cast<double>(i) * step;
    return grid;
}

ResistanceCurve strain_sweep(const PercolationNetwork& network, const TraceGeometry& geom,
                             std::span<const double> strain_grid, double failure_threshold,
                             const SweepOptions& options) {
    validate_grid(strain_grid);
    require(std::isfinite(failure_threshold) && failure_threshold > 1.0,
            "failure threshold must exceed 1");

    ResistanceCurve curve;
    curve.failure_threshold = failure_threshold;

    const auto g0 = solve_conductance(network, 0.0);
    if (!g0) {
        curve.failure_strain = 0.0;
        return curve;
    }

    const std::size_t n = strain_grid.size();
    std::vector<std::optional<double>> conductance(n);
    conductance[0] = g0;

    const unsigned threads = std::max(1u, options.threads);
    if (threads > 1) {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            workers.emplace_back([&, w] {
                for (std::size_t k = 1 + w; k < n; k += threads) {
                    conductance[k] = solve_conductance(network, strain_grid[k]);
                }
            });
        }
    }

    std::size_t prev_broken = 0;
    double running = *g0;
    for (std::size_t k = 0; k < n; ++k) {
        const double strain = strain_grid[k];
        if (threads == 1 && k > 0) {
            const std::size_t broken = broken_count(network, strain);
            conductance[k] = broken == prev_broken ? conductance[k - 1]
                                                   : solve_conductance(network, strain);
            prev_broken = broken;
        }
        if (!conductance[k]) {
            curve.failure_strain = strain;
            break;
        }
        running = std::min(running, *conductance[k]);
        const double ratio = affine_factor(strain) * (*g0 / running);
        curve.points.push_back({strain, geom.length_m() * (1.0 + strain), ratio});
        if (ratio >= failure_threshold) {
            curve.failure_strain = strain;
            break;
        }
    }
    return curve;
}

std::optional<double> find_failure_strain(const PercolationNetwork& network,
                                          std::span<const double> strain_grid,
                                          double failure_threshold) {
    validate_grid(strain_grid);
    const auto g0 = solve_conductance(network, 0.0);
    if (!g0) return 0.0;

    auto failed = [&](std::size_t k) {
        const auto g = solve_conductance(network, strain_grid[k]);
        return !g || affine_factor(strain_grid[k]) * (*g0 / *g) >= failure_threshold;
    };

    std::size_t lo = 0;  // known not failed (R/R0 = 1 at zero strain)
    std::size_t hi = strain_grid.size() - 1;
    if (lo == hi || !failed(hi)) return std::nullopt;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        (failed(mid) ? hi : lo) = mid;
    }
    return strain_grid[hi];
}

std::vector<double> absolute_resistance(const ResistanceCurve& curve, const TraceGeometry& geom,
                                        double sigma_s_per_m) {
    const double r0 = resistance_of_trace(geom, sigma_s_per_m);
    std::vector<double> out;
    out.reserve(curve.points.size());
    for (const auto& p : curve.points) out.push_back(r0 * p.normalized_resistance);
    return out;
}

std::vector<double> failure_strains(const EnsembleSpec& spec, const DamageModelParams& params) {
    validate_grid(spec.strain_grid);
    std::vector<double> out;
    out.reserve(spec.seeds.size());
    for (auto seed : spec.seeds) {
        const auto net = build_network(spec.rows, spec.cols, spec.occupancy, params, seed);
        out.push_back(find_failure_strain(net, spec.strain_grid, spec.failure_threshold)
                          .value_or(spec.strain_grid.back()));
    }
    return out;
}

double median(std::vector<double> values) {
    require(!values.empty(), "median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

DamageModelParams calibrate_median(const EnsembleSpec& spec, DamageModelParams start,
                                   CalibratedMedian which, double target, double tolerance) {
    start.validate();
    require(positive_finite(target), "calibration target must be > 0");
    require(!spec.seeds.empty(), "calibration needs at least one seed");
    require(which == CalibratedMedian::break_strain || start.lm_bridge_fraction > 0.0,
            "lm_break_strain_median has no effect while lm_bridge_fraction is 0");

    auto& knob = which == CalibratedMedian::break_strain ? start.break_strain_median
                                                         : start.lm_break_strain_median;
    auto evaluate = [&](double value) {
        knob = value;
        return median(failure_strains(spec, start));
    };

    // Failure strain is non-decreasing in either median, so bisect in log space.
    double lo = knob;
    double hi = knob;
    const double f_start = evaluate(knob);
    double f_lo = f_start;
    double f_hi = f_start;
    for (int i = 0; i < 40 && f_lo > target; ++i) f_lo = evaluate(lo *= 0.5);
    for (int i = 0; i < 40 && f_hi < target; ++i) f_hi = evaluate(hi *= 2.0);
    require(f_lo <= target + tolerance && f_hi >= target - tolerance,
            "calibration target is outside the reachable failure-strain range");
    for (int i = 0; i < 60; ++i) {
        const double mid = std::sqrt(lo * hi);
        const double value = evaluate(mid);
        if (std::abs(value - target) <= tolerance) {
            knob = mid;
            return start;
        }
        (value < target ? lo : hi) = mid;
        if (hi / lo < 1.0 + 1e-9) break;
    }
    knob = std::sqrt(lo * hi);
    return start;
}

}  // namespace softcircuit::electromech
