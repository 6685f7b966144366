#include "softcircuit/electromech/geometry.hpp"

#include "softcircuit/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace softcircuit::electromech {

namespace {

void require_positive(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ValidationError(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

TraceGeometry::TraceGeometry(double length_m, double width_m, double thickness_m)
    : length_m_(length_m), width_m_(width_m), thickness_m_(thickness_m) {
    require_positive(length_m, "length_m");
    require_positive(width_m, "width_m");
    require_positive(thickness_m, "thickness_m");
}

double volume(const TraceGeometry& geom) noexcept { return geom.volume(); }

double conductivity_constant_volume(double stretched_length_m, double resistance_ohm,
                                    double volume_m3) {
    require_positive(stretched_length_m, "stretched_length_m");
    require_positive(resistance_ohm, "resistance_ohm");
    require_positive(volume_m3, "volume_m3");
    return stretched_length_m * stretched_length_m / (resistance_ohm * volume_m3);
}

double resistance_of_trace(const TraceGeometry& geom, double sigma_s_per_m) {
    require_positive(sigma_s_per_m, "sigma");
    return geom.length_m() / (sigma_s_per_m * geom.width_m() * geom.thickness_m());
}

ConductivityMeasurement measure_conductivity(const TraceGeometry& geom, double resistance_ohm) {
    require_positive(resistance_ohm, "resistance_ohm");
    return {resistance_ohm,
            geom.length_m() / (resistance_ohm * geom.width_m() * geom.thickness_m())};
}

StretchState::StretchState(const TraceGeometry& reference, double strain)
    : strain_(strain), stretched_length_m_(reference.length_m() * (1.0 + strain)) {
    if (!std::isfinite(strain) || strain < 0.0) {
        throw ValidationError("strain must be finite and non-negative");
    }
}

double occupancy_from_ag_weight(double ag_wt_fraction) {
    if (!(ag_wt_fraction >= 0.0 && ag_wt_fraction <= 1.0)) {
        throw ValidationError("ag_wt_fraction must lie in [0, 1]");
    }
    return std::clamp((ag_wt_fraction - 0.70) / 0.25, 0.0, 1.0);
}

}  // namespace softcircuit::electromech
