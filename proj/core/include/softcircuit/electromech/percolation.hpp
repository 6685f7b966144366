#pragma once

// Bond-percolation model of a printed flake network under strain.
//
// Nodes sit on a rows x cols square lattice. The left column is merged into
// the source terminal and the right column into the sink terminal (bus bars).
// Each lattice bond is occupied with probability p and carries a lognormal
// break strain; a fraction q of occupied bonds is additionally bridged by
// liquid metal and survives until a (larger) second break strain.

#include "softcircuit/electromech/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace softcircuit::electromech {

struct DamageModelParams {
    double break_strain_median = 0.0;
    double break_strain_shape = 0.0;
    double lm_bridge_fraction = 0.0;
    double lm_break_strain_median = 0.0;
    double lm_break_strain_shape = 0.0;

    /// Throws ValidationError unless medians > 0, shapes > 0 and q in [0, 1].
    void validate() const;

    /// Calibrated defaults for the plain Ag-WPU ink (no liquid metal).
    [[nodiscard]] static DamageModelParams ag_wpu();
    /// Calibrated defaults for the biphasic Ag-EGaIn-WPU ink.
    [[nodiscard]] static DamageModelParams biphasic();

    friend bool operator==(const DamageModelParams&, const DamageModelParams&) = default;
};

struct Bond {
    std::uint32_t node_a = 0;
    std::uint32_t node_b = 0;
    bool occupied = false;
    double break_strain = 0.0;
    bool lm_bridged = false;
    double lm_break_strain = 0.0;

    /// Strain at which the bond stops conducting, or 0 for an empty site.
    [[nodiscard]] double effective_break_strain() const noexcept {
        if (!occupied) return 0.0;
        return lm_bridged ? lm_break_strain : break_strain;
    }
    /// A bond conducts at strain e while e < its effective break strain.
    [[nodiscard]] bool conducts_at(double strain) const noexcept {
        return occupied && strain < effective_break_strain();
    }

    friend bool operator==(const Bond&, const Bond&) = default;
};

struct PercolationNetwork {
    std::size_t rows = 0;
    std::size_t cols = 0;
    double bond_occupancy = 0.0;
    double unit_bond_conductance = 1.0;
    std::uint64_t seed = 0;
    DamageModelParams params;
    std::vector<Bond> bonds;

    [[nodiscard]] std::size_t node_count() const noexcept { return rows * cols; }
    [[nodiscard]] std::uint32_t node(std::size_t row, std::size_t col) const noexcept {
        return static_cast<std::uint32_t>(row * cols + col);
    }
    [[nodiscard]] std::size_t occupied_count() const noexcept;

    friend bool operator==(const PercolationNetwork&, const PercolationNetwork&) = default;
};

/// Builds a lattice network. The bond list is a pure function of the
/// arguments: every bond consumes the same number of random draws whatever the
/// occupancy or bridge fraction, so networks that differ only in q share
/// their occupied set and Ag break strains.
[[nodiscard]] PercolationNetwork build_network(std::size_t rows, std::size_t cols, double occupancy,
                                               const DamageModelParams& params, std::uint64_t seed,
                                               double unit_bond_conductance = 1.0);

/// General two-terminal resistor graph used by the nodal solver.
struct ResistorGraph {
    struct Edge {
        std::uint32_t a;
        std::uint32_t b;
        double conductance;
    };
    std::size_t node_count = 0;
    std::vector<Edge> edges;
    std::vector<std::uint32_t> source;  // held at potential 1
    std::vector<std::uint32_t> sink;    // held at potential 0
};

/// Effective conductance between the terminal sets, or nullopt when no
/// conducting path joins them. Solves the reduced graph Laplacian for the
/// interior node potentials with a sparse Cholesky factorization; floating
/// clusters are dropped before assembly so the system is never singular.
[[nodiscard]] std::optional<double> solve_conductance(const ResistorGraph& graph);

/// Conductance (siemens) of the network with every bond that has broken at
/// `strain` removed. strain = 0 gives the pristine network.
[[nodiscard]] std::optional<double> solve_conductance(const PercolationNetwork& network,
                                                      double strain = 0.0);

/// Resistor graph of the bonds still conducting at `strain`.
[[nodiscard]] ResistorGraph to_resistor_graph(const PercolationNetwork& network, double strain = 0.0);

/// Evenly spaced strains start, start + step, ... up to and including stop.
[[nodiscard]] std::vector<double> make_strain_grid(double stop, double step, double start = 0.0);

inline constexpr double kDefaultFailureThreshold = 100.0;

struct ResistancePoint {
    double strain;
    double stretched_length_m;
    double normalized_resistance;
};

/// R/R0 along a strain grid, up to and including the failure strain. A grid
/// point where the network has disconnected is not listed; only
/// `failure_strain` records it.
struct ResistanceCurve {
    std::vector<ResistancePoint> points;
    std::optional<double> failure_strain;
    double failure_threshold = kDefaultFailureThreshold;
};

struct SweepOptions {
    /// Worker threads for grid evaluation; 1 evaluates sequentially and stops
    /// at failure. Output does not depend on this value.
    unsigned threads = 1;
};

/// R(e)/R0 = (1 + e)^2 * G(0) / G(e). The affine factor is the constant
/// volume geometry term; G(e) is the network conductance after damage.
/// Conductance is carried forward as a running minimum along the grid, since
/// removing bonds can never raise it and round-off must not either.
[[nodiscard]] ResistanceCurve strain_sweep(const PercolationNetwork& network,
                                           const TraceGeometry& geom,
                                           std::span<const double> strain_grid,
                                           double failure_threshold = kDefaultFailureThreshold,
                                           const SweepOptions& options = {});

/// Same failure strain as strain_sweep, found by bisection over the grid.
[[nodiscard]] std::optional<double> find_failure_strain(
    const PercolationNetwork& network, std::span<const double> strain_grid,
    double failure_threshold = kDefaultFailureThreshold);

/// Absolute resistance along a curve, given the unstrained trace conductivity.
[[nodiscard]] std::vector<double> absolute_resistance(const ResistanceCurve& curve,
                                                      const TraceGeometry& geom,
                                                      double sigma_s_per_m);

struct EnsembleSpec {
    std::size_t rows = 32;
    std::size_t cols = 32;
    double occupancy = 0.0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> strain_grid;
    double failure_threshold = kDefaultFailureThreshold;
};

/// Failure strain of every seed; a network that never fails on the grid
/// reports the last grid strain.
[[nodiscard]] std::vector<double> failure_strains(const EnsembleSpec& spec,
                                                  const DamageModelParams& params);

[[nodiscard]] double median(std::vector<double> values);

/// Which median the calibration adjusts.
enum class CalibratedMedian { break_strain, lm_break_strain };

/// Bisects the chosen median until the ensemble median failure strain hits
/// `target` (to `tolerance`). All other parameters are held fixed. This is
/// the procedure that produced DamageModelParams::ag_wpu() and biphasic().
[[nodiscard]] DamageModelParams calibrate_median(const EnsembleSpec& spec, DamageModelParams start,
                                                 CalibratedMedian which, double target,
                                                 double tolerance = 1e-3);

}  // namespace softcircuit::electromech
