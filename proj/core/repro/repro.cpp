#include "repro.hpp"

#include "oracles.hpp"

#include "softcircuit/biosignal/classify.hpp"
#include "softcircuit/biosignal/ecg.hpp"
#include "softcircuit/biosignal/envelope.hpp"
#include "softcircuit/biosignal/filter.hpp"
#include "softcircuit/coldchain.hpp"
#include "softcircuit/electromech/geometry.hpp"
#include "softcircuit/electromech/percolation.hpp"
#include "softcircuit/error.hpp"
#include "softcircuit/io/csv.hpp"
#include "softcircuit/random.hpp"
#include "softcircuit/recycle.hpp"
#include "softcircuit/thermistor.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numbers>

namespace softcircuit::repro {
namespace {

using namespace std::chrono_literals;
namespace em = electromech;
namespace cc = coldchain;
namespace bio = biosignal;
namespace th = thermistor;
namespace rc = recycle;

std::string printf_string(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& f) {
    if (f.find_first_of(",\"\n") == std::string::npos) return f;
    std::string q = "\"";
    for (char c : f) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string render_csv(const TextTable& t) {
    std::string out;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
        out += '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return out;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng.uniform());
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {  // inclusive
    return lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

CriterionResult make(int id, bool passed, std::string detail) {
    CriterionResult r;
    r.id = id;
    r.passed = passed;
    r.detail = std::move(detail);
    return r;
}

// 1 ----------------------------------------------------------------------

CriterionResult stoichiometry(std::uint64_t) {
    const auto ink = rc::InkFormulation::reference_recipe();
    const double pct = 100.0 * rc::ag_dry_weight_fraction(ink);
    auto r = make(1, std::abs(pct - 89.18) <= 0.01, printf_string("Ag %.4f %% of dry solids", pct));
    nlohmann::json j{{"ag_mass_g", ink.ag_mass_g},
                     {"wpu_dispersion_mass_g", ink.wpu_dispersion_mass_g},
                     {"wpu_solid_fraction", ink.wpu_solid_fraction},
                     {"water_mass_g", ink.water_mass_g},
                     {"dry_solids_g", ink.dry_solids_g()},
                     {"ag_dry_weight_fraction", pct / 100.0}};
    r.artifacts.push_back({"recipe.json", j.dump(2) + "\n"});
    return r;
}

// 2 ----------------------------------------------------------------------

nlohmann::json ledger_json(const rc::MassLedger& ledger) {
    nlohmann::json outputs = nlohmann::json::array();
    const auto pct = ledger.percentages();
    for (std::size_t i = 0; i < ledger.outputs().size(); ++i) {
        outputs.push_back({{"label", ledger.outputs()[i].label},
                           {"mass_g", ledger.outputs()[i].mass_g},
                           {"percent", pct[i]}});
    }
    return {{"input_mass_g", ledger.input_mass_g()}, {"outputs", outputs}};
}

CriterionResult separation(std::uint64_t) {
    const auto ledger = rc::separation_ledger(100.0, 91.18, 1.04);
    const auto pct = ledger.percentages();
    const double expected[] = {91.18, 7.78, 1.04};
    bool ok = std::abs(ledger.output_total_g() - ledger.input_mass_g()) <= rc::kMassTolerance_g;
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        ok = ok && std::abs(pct[i] - expected[i]) <= 0.01;
        sum += pct[i];
    }
    ok = ok && std::abs(sum - 100.0) < 0.005;
    auto r = make(2, ok,
                  printf_string("%.2f / %.2f / %.2f %%, sum %.2f %%, imbalance %.1e g", pct[0], pct[1],
                                pct[2], sum, std::abs(ledger.output_total_g() - ledger.input_mass_g())));
    r.artifacts.push_back({"separation_ledger.json", ledger_json(ledger).dump(2) + "\n"});
    return r;
}

// 3 ----------------------------------------------------------------------

CriterionResult wash(std::uint64_t) {
    const auto w = rc::wash_ledger(12.0, 9.62, 0.73);
    const double recovered = w.ledger.mass("recovered_powder");
    const double loss_pct = 100.0 * w.loss_fraction;
    const bool ok = std::abs(recovered - 8.89) <= 0.005 && std::abs(loss_pct - 19.83) <= 0.02;
    auto r = make(3, ok,
                  printf_string("recovered %.2f g, loss %.3f %%, post-wash %.3f %%", recovered, loss_pct,
                                100.0 * w.post_wash_fraction));
    auto j = ledger_json(w.ledger);
    j["post_wash_fraction"] = w.post_wash_fraction;
    j["loss_fraction"] = w.loss_fraction;
    r.artifacts.push_back({"wash_ledger.json", j.dump(2) + "\n"});
    return r;
}

// 4 ----------------------------------------------------------------------

CriterionResult retention(std::uint64_t) {
    const auto rep = rc::conductivity_retention(1.16e5, 1.13e5);
    return make(4, std::abs(rep.retention_fraction - 0.9741) <= 1e-4,
                printf_string("retention %.6f, decay %.4f %%", rep.retention_fraction,
                              100.0 * rep.decay_fraction()));
}

// 5 ----------------------------------------------------------------------

CriterionResult geometry_round_trip(std::uint64_t seed) {
    Rng rng(oracle::derive_seed(seed, 5, 0));
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const em::TraceGeometry g(log_uniform(rng, 1e-3, 1.0), log_uniform(rng, 1e-4, 1e-1),
                                  log_uniform(rng, 1e-6, 1e-3));
        const double sigma = log_uniform(rng, 1e2, 1e8);
        const double r_ohm = em::resistance_of_trace(g, sigma);
        worst = std::max(worst, rel_err(em::measure_conductivity(g, r_ohm).sigma_s_per_m, sigma));
        worst = std::max(worst, rel_err(em::conductivity_constant_volume(g.length_m(), r_ohm, g.volume()),
                                        sigma));
    }
    const double r_ref = em::resistance_of_trace(em::reference::test_trace(), em::reference::kSigmaDay0.value);
    return make(5, worst <= 1e-9 && std::abs(r_ref - 1.352) <= 0.001,
                printf_string("worst relative error %.2e, reference trace %.6f ohm", worst, r_ref));
}

// 6 ----------------------------------------------------------------------

CriterionResult solver_oracle(std::uint64_t seed) {
    Rng rng(oracle::derive_seed(seed, 6, 0));
    double worst = 0.0;
    int connected = 0;
    int disagreements = 0;
    for (int i = 0; i < 200; ++i) {
        const auto rows = uniform_index(rng, 2, 4);
        const auto cols = uniform_index(rng, 2, 4);
        const double p = 0.4 + 0.6 * rng.uniform();
        const auto net = em::build_network(rows, cols, p, em::DamageModelParams::ag_wpu(), oracle::derive_seed(seed, 6, static_cast<std::uint64_t>(i) + 1));
        auto graph = em::to_resistor_graph(net, 0.0);
        for (auto& e : graph.edges) e.conductance = log_uniform(rng, 0.1, 10.0);
        const auto got = em::solve_conductance(graph);
        const auto want = oracle::dense_conductance(graph);
        if (got.has_value() != want.has_value()) {
            ++disagreements;
            continue;
        }
        if (got) {
            ++connected;
            worst = std::max(worst, rel_err(*got, *want));
        }
    }

    // 0 = source, 2 = sink
    const auto series = em::solve_conductance(em::ResistorGraph{3, {{0, 1, 1.0}, {1, 2, 3.0}}, {0}, {2}});
    const auto parallel = em::solve_conductance(em::ResistorGraph{2, {{0, 1, 0.75}, {0, 1, 0.5}}, {0}, {1}});
    const auto bridge =
        em::solve_conductance(em::ResistorGraph{3, {{0, 1, 2.0}, {1, 2, 2.0}, {0, 2, 0.5}}, {0}, {2}});
    const bool exact = series == 0.75 && parallel == 1.25 && bridge == 1.5;

    return make(6, disagreements == 0 && worst <= 1e-9 && exact && connected > 0,
                printf_string("%d connected, %d disconnected, worst relative error %.2e, series/parallel %s",
                              connected, 200 - connected - disagreements, worst, exact ? "exact" : "inexact"));
}

// 7 ----------------------------------------------------------------------

CriterionResult percolation_anchors(std::uint64_t seed) {
    const double p_low = em::occupancy_from_ag_weight(em::reference::kNonConductiveAgFraction.value);
    const double p_high = em::occupancy_from_ag_weight(em::reference::kWorkingInkAgFraction.value);
    int low = 0;
    int high = 0;
    constexpr int kSeeds = 50;
    for (int i = 0; i < kSeeds; ++i) {
        const auto s = oracle::derive_seed(seed, 7, static_cast<std::uint64_t>(i));
        low += em::solve_conductance(em::build_network(32, 32, p_low, em::DamageModelParams::ag_wpu(), s))
                   .has_value();
        high += em::solve_conductance(em::build_network(32, 32, p_high, em::DamageModelParams::ag_wpu(), s))
                    .has_value();
    }
    const double f_low = 100.0 * low / kSeeds;
    const double f_high = 100.0 * high / kSeeds;
    const bool ok = std::abs(p_low - 0.20) < 1e-3 && std::abs(p_high - 0.767) < 1e-3 && f_low < 5.0 &&
                    f_high > 95.0;
    return make(7, ok,
                printf_string("p=%.3f: %.0f %% spanning, p=%.4f: %.0f %% spanning", p_low, f_low, p_high,
                              f_high));
}

// 8 ----------------------------------------------------------------------

std::string curve_csv(const em::ResistanceCurve& curve, const em::TraceGeometry& geom) {
    const auto r_abs = em::absolute_resistance(curve, geom, em::reference::kSigmaDay0.value);
    TextTable t{{"strain", "stretched_length_m", "r_over_r0", "resistance_ohm"}, {}};
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& p = curve.points[i];
        t.rows.push_back({io::format_double(p.strain), io::format_double(p.stretched_length_m),
                          io::format_double(p.normalized_resistance), io::format_double(r_abs[i])});
    }
    return render_csv(t);
}

CriterionResult failure_calibration(std::uint64_t seed) {
    em::EnsembleSpec spec;
    spec.occupancy = em::occupancy_from_ag_weight(em::reference::kWorkingInkAgFraction.value);
    spec.strain_grid = em::make_strain_grid(10.0, 0.005);
    for (std::uint64_t i = 0; i < 20; ++i) spec.seeds.push_back(oracle::derive_seed(seed, 8, i));

    const auto ag = em::failure_strains(spec, em::DamageModelParams::ag_wpu());
    const auto bi = em::failure_strains(spec, em::DamageModelParams::biphasic());
    bool ordered = true;
    TextTable table{{"seed", "ag_wpu", "biphasic"}, {}};
    for (std::size_t i = 0; i < ag.size(); ++i) {
        ordered = ordered && bi[i] >= ag[i];
        table.rows.push_back({std::to_string(spec.seeds[i]), io::format_double(ag[i]), io::format_double(bi[i])});
    }
    const double m_ag = em::median(ag);
    const double m_bi = em::median(bi);
    const bool ok = m_ag >= 0.25 && m_ag <= 0.35 && m_bi >= 2.0 && m_bi <= 3.3 && ordered;
    auto r = make(8, ok,
                  printf_string("median Ag-WPU %.4f, biphasic %.4f, per-seed order %s", m_ag, m_bi,
                                ordered ? "holds" : "violated"));
    r.artifacts.push_back({"failure_strains.csv", render_csv(table)});

    const auto geom = em::reference::test_trace();
    const auto first = spec.seeds.front();
    for (const auto& [name, params] : {std::pair{"ag_wpu", em::DamageModelParams::ag_wpu()},
                                       std::pair{"biphasic", em::DamageModelParams::biphasic()}}) {
        const auto net = em::build_network(32, 32, spec.occupancy, params, first);
        const auto curve = em::strain_sweep(net, geom, spec.strain_grid);
        r.artifacts.push_back({std::string("strain_curve_") + name + ".csv", curve_csv(curve, geom)});
    }
    return r;
}

// 9 ----------------------------------------------------------------------

std::vector<cc::TemperatureSample> step_trace(std::int64_t hot_until, std::int64_t end) {
    std::vector<cc::TemperatureSample> s;
    for (std::int64_t t = 0; t <= end; t += 60) s.push_back({t, t <= hot_until ? 7.0 : 2.0});
    return s;
}

bool same_state(const cc::ColdChainState& a, const cc::ColdChainState& b) {
    return a.status == b.status && a.excursion_start == b.excursion_start && a.last_sample == b.last_sample &&
           a.latched_at == b.latched_at && a.history == b.history;
}

std::vector<cc::TemperatureSample> random_trace(Rng& rng, std::size_t n, std::int64_t start) {
    std::vector<cc::TemperatureSample> s;
    std::int64_t t = start;
    bool hot = rng.uniform() < 0.5;
    for (std::size_t i = 0; i < n; ++i) {
        t += static_cast<std::int64_t>(uniform_index(rng, 1, 300));
        if (rng.uniform() < 0.05) hot = !hot;
        const double temp = hot ? 5.0 + 10.0 * rng.uniform() : -10.0 + 15.0 * rng.uniform();
        s.push_back({t, std::round(temp * 1000.0) / 1000.0});
    }
    return s;
}

CriterionResult cold_chain(std::uint64_t seed) {
    const cc::ColdChainConfig config;
    std::vector<std::string> failures;

    const auto long_run = step_trace(3600, 7200);
    const auto latched = cc::run_trace(long_run, config);
    if (latched.state.status != cc::Status::unsafe_latched || latched.state.latched_at != 3600 ||
        oracle::first_latch_epoch(long_run, config.threshold_c, config.latch_duration_s) != 3600) {
        failures.push_back("3600 s excursion");
    }

    const auto short_run = step_trace(3540, 7200);
    const auto safe = cc::run_trace(short_run, config);
    if (safe.state.status != cc::Status::safe ||
        std::ranges::any_of(safe.timeline, [](auto s) { return s != cc::Status::safe; })) {
        failures.push_back("3540 s excursion");
    }

    Rng rng(oracle::derive_seed(seed, 9, 0));
    int oracle_mismatch = 0;
    for (int i = 0; i < 200; ++i) {
        const auto trace = random_trace(rng, 300, 0);
        const auto res = cc::run_trace(trace, config);
        const auto want = oracle::first_latch_epoch(trace, config.threshold_c, config.latch_duration_s);
        if (res.state.latched_at != want || (res.state.status == cc::Status::unsafe_latched) != want.has_value()) {
            ++oracle_mismatch;
        }
    }
    if (oracle_mismatch) failures.push_back(std::to_string(oracle_mismatch) + " random traces off oracle");

    auto state = latched.state;
    std::int64_t t = state.last_sample->epoch_s;
    bool reverted = false;
    for (int i = 0; i < 100'000; ++i) {
        t += static_cast<std::int64_t>(uniform_index(rng, 1, 600));
        cc::apply(state, {t, -30.0 + 60.0 * rng.uniform()}, config);
        reverted = reverted || state.status != cc::Status::unsafe_latched ||
                   cc::led_outputs(state) != cc::LedOutputs{false, true};
    }
    if (reverted) failures.push_back("latch reverted");

    int round_trip_failures = 0;
    std::string sample_payload;
    for (int i = 0; i < 1000; ++i) {
        const auto trace = random_trace(rng, uniform_index(rng, 0, 60), static_cast<std::int64_t>(i) * 1000);
        const auto st = cc::run_trace(trace, config).state;
        const auto payload = cc::encode_telemetry(st);
        if (i == 0) sample_payload = payload;
        if (!same_state(cc::decode_telemetry(payload, config), st)) ++round_trip_failures;
    }
    if (round_trip_failures) failures.push_back(std::to_string(round_trip_failures) + " telemetry mismatches");

    std::string detail = failures.empty() ? "latched at 3600 s; 3540 s SAFE; 1e5 samples held; 1000/1000 round trips"
                                          : "";
    for (const auto& f : failures) detail += (detail.empty() ? "" : "; ") + f;
    auto r = make(9, failures.empty(), detail);
    r.artifacts.push_back({"telemetry_latched.txt", cc::encode_telemetry(latched.state)});
    return r;
}

// 10 ---------------------------------------------------------------------

bool poles_inside(const bio::Biquad& q) {
    // z^2 + a1 z + a2 = 0
    const std::complex<double> disc = std::sqrt(std::complex<double>(q.a1 * q.a1 - 4.0 * q.a2, 0.0));
    const auto p1 = (-q.a1 + disc) / 2.0;
    const auto p2 = (-q.a1 - disc) / 2.0;
    return std::abs(p1) < 1.0 && std::abs(p2) < 1.0;
}

double section_db(const bio::Biquad& q, double f, double fs) { return 20.0 * std::log10(std::abs(q.response(f, fs))); }

CriterionResult filters(std::uint64_t seed) {
    constexpr double fs = 250.0;
    const auto notch = bio::design_filter(bio::FilterSpec::notch(60.0), fs);
    std::vector<double> sine(static_cast<std::size_t>(10 * fs));
    for (std::size_t k = 0; k < sine.size(); ++k) {
        sine[k] = std::sin(2.0 * std::numbers::pi * 60.0 * static_cast<double>(k) / fs);
    }
    const auto out = bio::apply_filter(notch, sine);
    double p_in = 0.0;
    double p_out = 0.0;
    for (std::size_t k = sine.size() / 2; k < sine.size(); ++k) {
        p_in += sine[k] * sine[k];
        p_out += out[k] * out[k];
    }
    const double measured_db = 10.0 * std::log10(p_out / p_in);

    double worst_corner = 0.0;
    auto corner = [&](const bio::Biquad& q, double f) {
        worst_corner = std::max(worst_corner, std::abs(section_db(q, f, fs) - (-10.0 * std::log10(2.0))));
    };
    for (const auto band : {bio::kEcgBand, bio::kEmgBand}) {
        const auto bp = bio::design_filter(bio::FilterSpec::bandpass(band), fs);
        corner(bp.at(0), band.low_hz);
        corner(bp.at(1), band.high_hz);
        corner(bio::design_filter(bio::FilterSpec::highpass(band.low_hz), fs).at(0), band.low_hz);
        corner(bio::design_filter(bio::FilterSpec::lowpass(band.high_hz), fs).at(0), band.high_hz);
    }

    Rng rng(oracle::derive_seed(seed, 10, 0));
    int unstable = 0;
    for (int i = 0; i < 1000; ++i) {
        const double rate = log_uniform(rng, 50.0, 5000.0);
        const double nyq = rate / 2.0;
        bio::FilterSpec spec;
        switch (uniform_index(rng, 0, 3)) {
        case 0: spec = bio::FilterSpec::notch(nyq * (0.01 + 0.98 * rng.uniform()), log_uniform(rng, 0.5, 100.0)); break;
        case 1: spec = bio::FilterSpec::highpass(nyq * (0.001 + 0.998 * rng.uniform())); break;
        case 2: spec = bio::FilterSpec::lowpass(nyq * (0.001 + 0.998 * rng.uniform())); break;
        default: {
            const double a = nyq * (0.001 + 0.998 * rng.uniform());
            const double b = nyq * (0.001 + 0.998 * rng.uniform());
            spec = bio::FilterSpec::bandpass(std::min(a, b), std::max(a, b) + 1e-6 * nyq);
        }
        }
        for (const auto& q : bio::design_filter(spec, rate)) unstable += !poles_inside(q);
    }

    const bool ok = measured_db <= -40.0 && worst_corner <= 0.01 && unstable == 0;
    auto r = make(10, ok,
                  printf_string("60 Hz notch %.1f dB (analytic %.1f dB), corner error %.1e dB, %d unstable sections",
                                measured_db, bio::magnitude_db(notch, 60.0, fs), worst_corner, unstable));
    TextTable t{{"chain", "section", "b0", "b1", "b2", "a1", "a2"}, {}};
    for (const auto& [name, band] : {std::pair{"ecg", bio::kEcgBand}, std::pair{"emg", bio::kEmgBand}}) {
        const auto chain = bio::design_chain(band, fs);
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const auto& q = chain[i];
            t.rows.push_back({name, std::to_string(i), io::format_double(q.b0), io::format_double(q.b1),
                              io::format_double(q.b2), io::format_double(q.a1), io::format_double(q.a2)});
        }
    }
    r.artifacts.push_back({"filter_coefficients.csv", render_csv(t)});
    return r;
}

// 11 ---------------------------------------------------------------------

CriterionResult dsp_oracles(std::uint64_t seed) {
    Rng rng(oracle::derive_seed(seed, 11, 0));
    int env_mismatch = 0;
    int dtw_mismatch = 0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> x(uniform_index(rng, 1, 400));
        for (auto& v : x) v = 100.0 * rng.normal();
        const auto w = uniform_index(rng, 1, 120);
        env_mismatch += bio::rms_envelope(x, w).values != oracle::brute_rms(x, w);
        env_mismatch += th::moving_average(x, w) != oracle::brute_moving_average(x, w);

        std::vector<double> a(uniform_index(rng, 1, 40));
        std::vector<double> b(uniform_index(rng, 1, 40));
        for (auto& v : a) v = rng.normal();
        for (auto& v : b) v = rng.normal();
        const double ab = bio::dtw_distance(a, b);
        dtw_mismatch += bio::dtw_distance(a, a) != 0.0;
        dtw_mismatch += ab != bio::dtw_distance(b, a);
        dtw_mismatch += std::abs(ab - oracle::dtw_table(a, b)) > 1e-12 * std::max(1.0, ab);
    }
    const std::vector<double> a{0.0, 1.0, 2.0};
    const std::vector<double> b{0.0, 2.0};
    const double hand = bio::dtw_distance(a, b);
    return make(11, env_mismatch == 0 && dtw_mismatch == 0 && hand == 1.0,
                printf_string("%d envelope mismatches, %d DTW mismatches, dtw([0,1,2],[0,2]) = %g", env_mismatch,
                              dtw_mismatch, hand));
}

// 12 ---------------------------------------------------------------------

CriterionResult ecg(std::uint64_t) {
    std::vector<double> times;
    for (int k = 0; k < 16; ++k) times.push_back(0.5 + 0.63 * k);
    auto signal = oracle::impulse_train(1000.0, 11.0, times);
    const auto clean = bio::detect_r_peaks({signal, 1000.0});

    // Secondary spikes 100 ms after each beat must be ignored.
    for (double t : times) {
        const auto k = static_cast<std::size_t>(std::llround((t + 0.1) * 1000.0));
        if (k < signal.size()) signal[k] = 0.8;
    }
    const auto spiky = bio::detect_r_peaks({signal, 1000.0});

    // At 250 Hz 630 ms is 157.5 samples, so beats alternate 157 and 158.
    std::vector<double> coarse(2750, 0.0);
    for (std::size_t k = 125, i = 0; k < coarse.size(); k += (i++ % 2 == 0) ? 157 : 158) coarse[k] = 1.0;
    const auto at250 = bio::detect_r_peaks({coarse, 250.0});

    bool ok = clean && spiky && at250 && clean->rr_intervals_ms.size() == times.size() - 1;
    double hr = 0.0;
    double hr250 = 0.0;
    if (ok) {
        ok = std::ranges::all_of(clean->rr_intervals_ms, [](double rr) { return rr == 630.0; }) &&
             spiky->r_peak_indices == clean->r_peak_indices;
        hr = clean->heart_rate_bpm;
        hr250 = at250->heart_rate_bpm;
        ok = ok && std::abs(hr - 60000.0 / 630.0) < 1e-9 && std::round(hr * 100.0) / 100.0 == 95.24 &&
             std::abs(hr250 - 60000.0 / 630.0) < 1e-9;
    }
    return make(12, ok,
                printf_string("RR 630 ms x %zu, HR %.4f bpm (250 Hz: %.4f), refractory %s",
                              clean ? clean->rr_intervals_ms.size() : 0, hr, hr250,
                              ok ? "rejects 100 ms spikes" : "check failed"));
}

// 13 ---------------------------------------------------------------------

std::vector<bio::LabeledSequence> labeled(const std::vector<std::vector<double>>& envs, const char* rep) {
    std::vector<bio::LabeledSequence> out;
    for (std::size_t g = 0; g < envs.size(); ++g) {
        out.push_back({"g" + std::to_string(g) + rep, "g" + std::to_string(g), envs[g]});
    }
    return out;
}

CriterionResult classification(std::uint64_t seed) {
    constexpr int kTrials = 100;
    int correct_trials = 0;
    std::string matrix_csv;
    for (int trial = 0; trial < kTrials; ++trial) {
        Rng rng(oracle::derive_seed(seed, 13, static_cast<std::uint64_t>(trial)));
        const auto set = oracle::synthetic_gestures(rng, 20.0);
        const auto refs = labeled(set.repetition_a, "a");
        const auto queries = labeled(set.repetition_b, "b");
        const auto cls = bio::classify_nearest(queries, refs, bio::Metric::dtw);
        bool all = true;
        for (std::size_t q = 0; q < queries.size(); ++q) all = all && cls.labels[q] == queries[q].label;
        correct_trials += all;

        if (trial == 0) {
            auto all_seq = refs;
            all_seq.insert(all_seq.end(), queries.begin(), queries.end());
            const auto m = bio::distance_matrix(all_seq, bio::Metric::dtw);
            TextTable t{{"id"}, {}};
            for (const auto& l : m.labels) t.header.push_back(l);
            for (std::size_t i = 0; i < m.size(); ++i) {
                std::vector<std::string> row{m.labels[i]};
                for (std::size_t j = 0; j < m.size(); ++j) row.push_back(io::format_double(m.at(i, j)));
                t.rows.push_back(row);
            }
            matrix_csv = render_csv(t);
        }
    }
    auto r = make(13, correct_trials >= 95,
                  printf_string("%d/%d trials pair every gesture with its repetition", correct_trials, kTrials));
    r.artifacts.push_back({"gesture_dtw_matrix.csv", matrix_csv});
    return r;
}

// 14 ---------------------------------------------------------------------

CriterionResult thermistor_round_trip(std::uint64_t seed) {
    const th::NtcParams ntc;
    const th::DividerConfig divider;
    Rng rng(oracle::derive_seed(seed, 14, 0));
    std::vector<th::CalibrationPoint> points;
    for (int rep = 0; rep < 5; ++rep) {
        for (int t = 25; t <= 50; ++t) {
            const double plate = t + 0.05 * rng.normal();
            points.push_back({static_cast<double>(th::adc_from_temperature(plate, ntc, divider)), double(t)});
        }
    }
    const auto curve = th::fit_linear_calibration(points);
    double worst = 0.0;
    for (int i = 0; i <= 2500; ++i) {
        const double t = 25.0 + 0.01 * i;
        const auto count = static_cast<double>(th::adc_from_temperature(t, ntc, divider));
        worst = std::max(worst, std::abs(th::temperature_from_adc(count, curve).temp_c - t));
    }
    auto r = make(14, worst <= 0.5,
                  printf_string("max |T - T_hat| %.3f C over 25-50 C, residual rms %.3f C", worst,
                                curve.residual_rms));
    nlohmann::json j{{"slope_c_per_count", curve.slope},     {"intercept_c", curve.intercept},
                     {"fit_min_c", curve.fit_min_c},         {"fit_max_c", curve.fit_max_c},
                     {"residual_rms_c", curve.residual_rms}, {"r_fixed_ohm", divider.r_fixed_ohm}};
    r.artifacts.push_back({"thermistor_curve.json", j.dump(2) + "\n"});
    return r;
}

std::vector<Artifact> collect(const std::vector<CriterionResult>& results) {
    std::vector<Artifact> all;
    for (const auto& r : results) all.insert(all.end(), r.artifacts.begin(), r.artifacts.end());
    return all;
}

void write_all(const std::filesystem::path& dir, const std::vector<Artifact>& artifacts) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    for (const auto& a : artifacts) io::write_text_file(dir / a.name, a.content);
}

}  // namespace

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "stoichiometry", 1s, stoichiometry},
        {2, "separation ledger", 1s, separation},
        {3, "wash ledger", 1s, wash},
        {4, "conductivity retention", 1s, retention},
        {5, "geometry round trip", 5s, geometry_round_trip},
        {6, "network solver oracle", 30s, solver_oracle},
        {7, "percolation anchors", 120s, percolation_anchors},
        {8, "failure-strain calibration", 300s, failure_calibration},
        {9, "cold chain latch", 60s, cold_chain},
        {10, "filters", 30s, filters},
        {11, "dsp oracles", 60s, dsp_oracles},
        {12, "ecg features", 10s, ecg},
        {13, "gesture classification", 120s, classification},
        {14, "thermistor round trip", 10s, thermistor_round_trip},
    };
    return all;
}

CriterionResult run_criterion(const Criterion& criterion, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = criterion.check(seed);
    } catch (const std::exception& e) {
        r = make(criterion.id, false, std::string("threw: ") + e.what());
    }
    r.elapsed = std::chrono::steady_clock::now() - start;
    r.id = criterion.id;
    r.name = criterion.name;
    r.budget = criterion.budget;
    if (r.elapsed > r.budget) {
        r.passed = false;
        r.detail += printf_string(" (over %.0f s budget)", r.budget.count());
    }
    return r;
}

bool SuiteReport::all_passed() const noexcept {
    return std::ranges::all_of(results, [](const auto& r) { return r.passed; });
}

SuiteReport run_suite(std::uint64_t seed, const std::filesystem::path& out_dir, const ProgressFn& progress) {
    SuiteReport report;
    for (const auto& c : criteria()) {
        report.results.push_back(run_criterion(c, seed));
        if (progress) progress(report.results.back());
    }

    // 15: a second, independent pass must reproduce every artifact byte for byte.
    const auto start = std::chrono::steady_clock::now();
    const auto first = collect(report.results);
    write_all(out_dir, first);

    std::vector<CriterionResult> again;
    for (const auto& c : criteria()) again.push_back(c.check(seed));
    const auto scratch = out_dir / ".repro-second-pass";
    write_all(scratch, collect(again));

    std::size_t identical = 0;
    std::string differing;
    for (const auto& a : first) {
        if (io::read_text_file(out_dir / a.name) == io::read_text_file(scratch / a.name)) {
            ++identical;
        } else {
            differing += " " + a.name;
        }
    }
    std::filesystem::remove_all(scratch);

    CriterionResult r15;
    r15.id = 15;
    r15.name = "reproducibility";
    r15.passed = identical == first.size() && !first.empty();
    r15.detail = printf_string("%zu/%zu artifact files byte-identical across two runs", identical, first.size());
    if (!differing.empty()) r15.detail += "; differ:" + differing;
    r15.elapsed = std::chrono::steady_clock::now() - start;
    r15.budget = std::chrono::duration<double>(std::numeric_limits<double>::infinity());
    report.results.push_back(r15);
    if (progress) progress(r15);

    io::write_text_file(out_dir / "acceptance.csv", report_csv(report.results));
    return report;
}

std::string format_line(const CriterionResult& r) {
    return printf_string("%s %2d  %-27s %7.2f s  %s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                         r.elapsed.count(), r.detail.c_str());
}

std::string report_csv(const std::vector<CriterionResult>& results) {
    TextTable t{{"id", "criterion", "result", "detail"}, {}};
    for (const auto& r : results) {
        t.rows.push_back({std::to_string(r.id), r.name, r.passed ? "PASS" : "FAIL", r.detail});
    }
    return render_csv(t);
}

}  // namespace softcircuit::repro
