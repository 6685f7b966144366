#pragma once

#include <string_view>

namespace softcircuit::electromech {

/// Rectangular printed trace. All dimensions in meters, strictly positive and finite.
class TraceGeometry {
public:
    TraceGeometry(double length_m, double width_m, double thickness_m);

    [[nodiscard]] double length_m() const noexcept { return length_m_; }
    [[nodiscard]] double width_m() const noexcept { return width_m_; }
    [[nodiscard]] double thickness_m() const noexcept { return thickness_m_; }
    [[nodiscard]] double volume() const noexcept { return length_m_ * width_m_ * thickness_m_; }

    friend bool operator==(const TraceGeometry&, const TraceGeometry&) = default;

private:
    double length_m_;
    double width_m_;
    double thickness_m_;
};

/// Trace volume l * t * w in cubic meters.
[[nodiscard]] double volume(const TraceGeometry& geom) noexcept;

/// Conductivity of a stretched trace assuming the conductor is incompressible,
/// sigma = l^2 / (R * V). Only an approximation: real composites are not
/// perfectly volume preserving under strain.
[[nodiscard]] double conductivity_constant_volume(double stretched_length_m, double resistance_ohm,
                                                  double volume_m3);

/// Resistance of an unstrained trace, R = l / (sigma * w * t).
[[nodiscard]] double resistance_of_trace(const TraceGeometry& geom, double sigma_s_per_m);

/// A resistance reading paired with the conductivity it implies for a geometry.
struct ConductivityMeasurement {
    double resistance_ohm;
    double sigma_s_per_m;
};

[[nodiscard]] ConductivityMeasurement measure_conductivity(const TraceGeometry& geom,
                                                           double resistance_ohm);

/// Engineering strain and the resulting trace length.
class StretchState {
public:
    StretchState(const TraceGeometry& reference, double strain);

    [[nodiscard]] double strain() const noexcept { return strain_; }
    [[nodiscard]] double stretched_length_m() const noexcept { return stretched_length_m_; }

private:
    double strain_;
    double stretched_length_m_;
};

/// Maps dry Ag weight fraction to lattice bond occupancy with the piecewise
/// linear calibration p(w) = clamp((w - 0.70) / 0.25, 0, 1).
///
/// The anchors put 75 wt% (non-conductive inks) at p = 0.2, below the square
/// lattice bond percolation threshold of 1/2, and the 89.18 wt% working ink at
/// p = 0.767, well inside the conducting phase.
[[nodiscard]] double occupancy_from_ag_weight(double ag_wt_fraction);

inline constexpr double kSquareLatticeBondThreshold = 0.5;

/// Measured values the simulations are checked against.
struct ReferenceValue {
    double value;
    std::string_view source;
};

struct ReferenceRange {
    double low;
    double high;
    std::string_view source;
};

namespace reference {

inline constexpr ReferenceValue kSigmaDay0{1.16e5, "printed Ag-WPU trace, S/m, measured once dry (day 0)"};
inline constexpr ReferenceValue kSigmaDay30Print{1.54e5, "printed Ag-WPU trace, S/m, 30 days uncovered"};
inline constexpr ReferenceValue kSigmaDay30Vial{1.62e5, "ink stored 30 days in a closed vial, S/m"};
inline constexpr ReferenceRange kAgWpuFailureStrain{0.283, 0.335,
                                                    "Ag-WPU traces, strain at R/R0 = 100 (3 samples)"};
inline constexpr ReferenceRange kBiphasicFailureStrain{
    2.03, 3.235, "Ag-EGaIn-WPU traces, strain at R/R0 = 100 (3 samples)"};
inline constexpr ReferenceValue kTraceLength{0.08, "conductivity test trace length, m"};
inline constexpr ReferenceValue kTraceWidth{0.005, "conductivity test trace width, m"};
inline constexpr ReferenceValue kTraceThickness{102e-6, "conductivity test trace thickness, m"};
inline constexpr ReferenceValue kWorkingInkAgFraction{0.8918, "dry Ag weight fraction of the working ink"};
inline constexpr ReferenceValue kNonConductiveAgFraction{0.75, "Ag fraction below which traces do not conduct"};

[[nodiscard]] inline TraceGeometry test_trace() {
    return {kTraceLength.value, kTraceWidth.value, kTraceThickness.value};
}

}  // namespace reference

}  // namespace softcircuit::electromech
