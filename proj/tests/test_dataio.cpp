#include "hingefit/dataio.hpp"

#include "hingefit/config.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace hingefit;

namespace {

std::filesystem::path tmp_path(const std::string& name) {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "hingefit_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("time-series CSV reading") {
    SECTION("three-row file") {
        const auto path = tmp_path("basic.csv");
        write_text(path, "t,x\n0,0\n0.001,1\n0.002,0\n");
        const auto series = read_timeseries_csv(path.string());
        REQUIRE(series.size() == 1);
        CHECK(series[0].dt() == Catch::Approx(0.001).epsilon(1e-12));
        CHECK(series[0].values() == std::vector<double>{0.0, 1.0, 0.0});
        CHECK(series[0].label() == "x");
    }
    SECTION("decreasing time is rejected with the row index") {
        const auto path = tmp_path("decreasing.csv");
        write_text(path, "t,x\n0,0\n0.002,1\n0.001,0\n");
        try {
            read_timeseries_csv(path.string());
            FAIL("expected format_error");
        } catch (const format_error& e) {
            CHECK(std::string(e.what()).find("row 3") != std::string::npos);
        }
    }
    SECTION("non-uniform grid is rejected with the row index") {
        const auto path = tmp_path("nonuniform.csv");
        write_text(path, "t,x\n0,0\n0.001,1\n0.002,2\n0.004,3\n");
        try {
            read_timeseries_csv(path.string());
            FAIL("expected format_error");
        } catch (const format_error& e) {
            CHECK(std::string(e.what()).find("non-uniform") != std::string::npos);
            CHECK(std::string(e.what()).find("row 4") != std::string::npos);
        }
    }
    SECTION("NaN cell is rejected") {
        const auto path = tmp_path("nan.csv");
        write_text(path, "t,x\n0,0\n0.001,nan\n0.002,0\n");
        CHECK_THROWS_AS(read_timeseries_csv(path.string()), format_error);
    }
    SECTION("bad header is rejected") {
        const auto path = tmp_path("badheader.csv");
        write_text(path, "time,x\n0,0\n0.001,1\n");
        CHECK_THROWS_AS(read_timeseries_csv(path.string()), format_error);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(read_timeseries_csv("/nonexistent/nowhere.csv"), format_error);
    }
    SECTION("five seconds at 1 kHz") {
        const auto path = tmp_path("record.csv");
        std::ostringstream ss;
        ss << "t,x\n";
        for (int i = 0; i < 5000; ++i)
            ss << detail::format_double(1e-3 * i) << ','
               << detail::format_double(std::sin(0.01 * i)) << '\n';
        write_text(path, ss.str());
        const auto series = read_timeseries_csv(path.string());
        REQUIRE(series.size() == 1);
        CHECK(series[0].size() == 5000);
        CHECK(series[0].dt() == Catch::Approx(1e-3).epsilon(1e-12));
    }
}

TEST_CASE("time-series CSV round trip") {
    std::mt19937_64 rng(990001);
    std::normal_distribution<double> dist(0.0, 3.7);
    std::vector<double> xs(257), vs(257);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = dist(rng);
        vs[i] = dist(rng);
    }
    const TimeSeries x(0.25, 1e-3, xs, "x", "m");
    const TimeSeries v(0.25, 1e-3, vs, "v", "m/s");

    const auto path = tmp_path("roundtrip.csv");
    write_timeseries_csv(path.string(), {x, v});
    const auto back = read_timeseries_csv(path.string());
    REQUIRE(back.size() == 2);
    CHECK(back[0].values() == x.values()); // bit-exact
    CHECK(back[1].values() == v.values());
    CHECK(back[0].label() == "x");
    CHECK(back[1].units() == "m/s");

    SECTION("writers are deterministic") {
        const auto path2 = tmp_path("roundtrip2.csv");
        write_timeseries_csv(path2.string(), {x, v});
        CHECK(read_text(path) == read_text(path2));
    }
}

TEST_CASE("sample CSV for the direct method") {
    const auto path = tmp_path("samples.csv");
    const std::vector<double> xs = {-1.0, 0.0, 1.0};
    const std::vector<double> fs = {-10.0, 0.0, 10.0};
    write_samples_csv(path.string(), xs, fs);
    const auto [rx, rf] = read_samples_csv(path.string());
    CHECK(rx == xs);
    CHECK(rf == fs);

    const auto bad = tmp_path("samples_bad.csv");
    write_text(bad, "x,g\n0,0\n");
    CHECK_THROWS_AS(read_samples_csv(bad.string()), format_error);
}

TEST_CASE("sweep CSV schema and round trip") {
    SweepResult sweep;
    sweep.frequencies_hz = {0.1, 0.2};
    sweep.amplitudes = {1.5, 2.5};
    sweep.valid = {true, false};
    sweep.direction = SweepDirection::Down;
    sweep.f_n_hz = 0.2;
    sweep.x_st = 0.5;
    sweep.transient_cycles = 180;
    sweep.measure_cycles = 20;

    const auto path = tmp_path("sweep.csv");
    write_sweep_csv(path.string(), sweep);

    SECTION("golden schema") {
        const std::string text = read_text(path);
        CHECK(text.find("f_hz,f_over_fn,amplitude,amp_over_xst,valid,direction\n") !=
              std::string::npos);
        CHECK(text.find("0.10000000000000001,0.5,1.5,3,1,down\n") != std::string::npos);
    }
    SECTION("round trip") {
        const SweepResult back = read_sweep_csv(path.string());
        CHECK(back.frequencies_hz == sweep.frequencies_hz);
        CHECK(back.amplitudes == sweep.amplitudes);
        CHECK(back.valid == sweep.valid);
        CHECK(back.direction == SweepDirection::Down);
        CHECK(back.f_n_hz == sweep.f_n_hz);
        CHECK(back.x_st == sweep.x_st);
        CHECK(back.transient_cycles == 180);
        CHECK(back.measure_cycles == 20);
    }
    SECTION("transmissibility companion file") {
        CHECK_THROWS_AS(write_transmissibility_csv(tmp_path("tr.csv").string(), sweep),
                        std::invalid_argument);
        sweep.transmissibility = {10.0, 2.0};
        sweep.phase_deg = {90.0, 175.0};
        write_transmissibility_csv(tmp_path("tr.csv").string(), sweep);
        const std::string text = read_text(tmp_path("tr.csv"));
        CHECK(text.find("f_hz,transmissibility,phase_deg\n") != std::string::npos);
        CHECK(text.find("0.20000000000000001,2,175\n") != std::string::npos);
    }
}

TEST_CASE("backbone CSV schema and round trip") {
    BackboneCurve curve;
    curve.amplitudes = {1.9, 1.2, 0.4};
    curve.frequencies_hz = {0.23, 0.21, 0.16};
    curve.source = "x";

    const auto path = tmp_path("backbone.csv");
    write_backbone_csv(path.string(), curve);
    const std::string text = read_text(path);
    CHECK(text.find("amplitude,frequency_hz\n") != std::string::npos);

    const BackboneCurve back = read_backbone_csv(path.string());
    CHECK(back.amplitudes == curve.amplitudes);
    CHECK(back.frequencies_hz == curve.frequencies_hz);
    CHECK(back.source == "x");
}

TEST_CASE("spectrum CSV") {
    Spectrum spec;
    spec.frequencies = {0.0, 0.5, 1.0};
    spec.magnitudes = {0.1, 2.0, 0.3};
    spec.df = 0.5;

    SECTION("plain schema") {
        const auto path = tmp_path("spec.csv");
        write_spectrum_csv(path.string(), spec);
        CHECK(read_text(path).find("frequency_hz,magnitude\n") != std::string::npos);
        const Spectrum back = read_spectrum_csv(path.string());
        CHECK(back.frequencies == spec.frequencies);
        CHECK(back.magnitudes == spec.magnitudes);
        CHECK(back.df == Catch::Approx(0.5));
    }
    SECTION("normalized axis with an excitation frequency") {
        const auto path = tmp_path("spec_fe.csv");
        write_spectrum_csv(path.string(), spec, 0.5);
        const std::string text = read_text(path);
        CHECK(text.find("frequency_hz,f_over_fe,magnitude\n") != std::string::npos);
        CHECK(text.find("1,2,0.29999999999999999") != std::string::npos);
        const Spectrum back = read_spectrum_csv(path.string());
        CHECK(back.magnitudes == spec.magnitudes);
    }
}

TEST_CASE("model persistence") {
    SECTION("force model round trip evaluates identically") {
        std::mt19937_64 rng(990002);
        std::normal_distribution<double> dist(0.0, 2.0);
        ForceModel model;
        const GapGrid grid = uniform_gap_grid(-5.0, 5.0, 128, 128);
        model.specs = hinge_specs(grid);
        for (std::size_t i = 0; i < model.specs.size(); ++i) model.kappa.push_back(dist(rng));
        model.normalized_by_mass = true;
        model.fit_lo = -5.0;
        model.fit_hi = 5.0;
        FitReport report;
        report.residual_rms = 1.25e-7;
        report.rank_used = 250;
        report.columns = 256;
        report.condition_estimate = 3.4e8;

        const auto path = tmp_path("force.model");
        save_model(path.string(), model, report);
        const LoadedModel loaded = load_model(path.string());
        REQUIRE_FALSE(loaded.is_potential());
        const ForceModel& back = loaded.force();
        CHECK(back.normalized_by_mass == model.normalized_by_mass);
        CHECK(back.fit_lo == model.fit_lo);
        CHECK(back.fit_hi == model.fit_hi);
        CHECK(loaded.report.residual_rms == report.residual_rms);
        CHECK(loaded.report.rank_used == report.rank_used);
        for (double x : linspace(-6.0, 6.0, 257))
            CHECK(back.eval(x) == model.eval(x)); // bit-exact round trip
    }
    SECTION("potential model round trip") {
        PotentialForceModel model;
        model.q1 = 0.125;
        model.q2 = -43.7;
        model.gaps = {0.0, 0.003, 0.011};
        model.kappa = {-700.0, 123.456789012345, -0.5};
        model.fit_lo = -0.02;
        model.fit_hi = 0.02;
        FitReport report;
        report.psi_linear_column = true;
        report.rank_used = 5;
        report.columns = 5;

        const auto path = tmp_path("potential.model");
        save_model(path.string(), model, report);
        const LoadedModel loaded = load_model(path.string());
        REQUIRE(loaded.is_potential());
        const PotentialForceModel& back = loaded.potential();
        CHECK(back.q1 == model.q1);
        CHECK(back.q2 == model.q2);
        CHECK(back.gaps == model.gaps);
        CHECK(back.kappa == model.kappa);
        CHECK(loaded.report.psi_linear_column);
        for (double x : linspace(-0.03, 0.03, 101)) {
            CHECK(back.force(x) == model.force(x));
            CHECK(back.potential(x) == model.potential(x));
        }
    }
    SECTION("hand-written single-hinge file") {
        const auto path = tmp_path("hand.model");
        write_text(path,
                   "hingefit-model v1\n"
                   "kind force\n"
                   "normalized_by_mass 0\n"
                   "fit_range -5 5\n"
                   "report residual_rms 0 rank 1 columns 1 condition 1\n"
                   "terms 1\n"
                   "max_hinge 0.5 10\n"
                   "end\n");
        const LoadedModel loaded = load_model(path.string());
        CHECK(loaded.force().eval(1.0) == 5.0);
    }
    SECTION("unknown basis kind is rejected by name") {
        const auto path = tmp_path("unknown.model");
        write_text(path,
                   "hingefit-model v1\n"
                   "kind force\n"
                   "normalized_by_mass 0\n"
                   "fit_range -5 5\n"
                   "report residual_rms 0 rank 1 columns 1 condition 1\n"
                   "terms 1\n"
                   "sigmoid 0.5 10\n"
                   "end\n");
        try {
            load_model(path.string());
            FAIL("expected format_error");
        } catch (const format_error& e) {
            CHECK(std::string(e.what()).find("sigmoid") != std::string::npos);
        }
    }
    SECTION("version mismatch is rejected") {
        const auto path = tmp_path("version.model");
        write_text(path, "hingefit-model v999\nkind force\n");
        CHECK_THROWS_AS(load_model(path.string()), format_error);
    }
    SECTION("truncated file is rejected") {
        const auto path = tmp_path("truncated.model");
        write_text(path,
                   "hingefit-model v1\n"
                   "kind force\n"
                   "normalized_by_mass 0\n"
                   "fit_range -5 5\n"
                   "report residual_rms 0 rank 2 columns 2 condition 1\n"
                   "terms 2\n"
                   "max_hinge 0.5 10\n");
        CHECK_THROWS_AS(load_model(path.string()), format_error);
    }
}

TEST_CASE("run configuration") {
    SECTION("minimal config fills defaults") {
        const auto path = tmp_path("minimal.cfg");
        write_text(path, "method = direct\ngrid.m = 8\ngrid.n = 8\n");
        const RunConfig cfg = read_config(path.string());
        CHECK(cfg.method == FitMethod::Direct);
        CHECK(cfg.grid_m == 8);
        CHECK(cfg.integ_dt == 1e-3);
        CHECK(cfg.sweep_direction == SweepDirection::Up);
        CHECK(cfg.prep_fit_fraction == 0.6);
        const std::string dump = cfg.dump();
        CHECK(dump.find("integ.dt = 0.001") != std::string::npos);
        CHECK(dump.find("forcing.kind = none") != std::string::npos);
    }
    SECTION("experimental linear parameters are accepted") {
        const auto path = tmp_path("exp.cfg");
        write_text(path,
                   "method = potential\n"
                   "osc.zeta = 0.0054\n"
                   "osc.omega_n = 65.2\n"
                   "psi.count = 32\n");
        const RunConfig cfg = read_config(path.string());
        CHECK(cfg.effective_zeta() == 0.0054);
        CHECK(cfg.effective_omega_n() == 65.2);
        const OscillatorModel osc = cfg.oscillator();
        CHECK(osc.k == Catch::Approx(65.2 * 65.2));
        CHECK(osc.c == Catch::Approx(2.0 * 0.0054 * 65.2));
    }
    SECTION("negative gap counts are rejected") {
        const auto path = tmp_path("negm.cfg");
        write_text(path, "grid.m = -1\n");
        try {
            read_config(path.string());
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("grid.m") != std::string::npos);
        }
    }
    SECTION("unknown keys are rejected by name") {
        const auto path = tmp_path("unknown.cfg");
        write_text(path, "grid.m = 8\nwibble.wobble = 3\n");
        try {
            read_config(path.string());
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("wibble.wobble") != std::string::npos);
        }
    }
    SECTION("type mismatches name the key") {
        const auto path = tmp_path("badtype.cfg");
        write_text(path, "integ.dt = fast\n");
        try {
            read_config(path.string());
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("integ.dt") != std::string::npos);
        }
    }
    SECTION("duplicate keys are rejected") {
        const auto path = tmp_path("dup.cfg");
        write_text(path, "grid.m = 8\ngrid.m = 9\n");
        CHECK_THROWS_AS(read_config(path.string()), config_error);
    }
    SECTION("zeta and omega_n must come together") {
        const auto path = tmp_path("zeta_only.cfg");
        write_text(path, "osc.zeta = 0.01\n");
        CHECK_THROWS_AS(read_config(path.string()), config_error);
    }
    SECTION("comments and blank lines are ignored") {
        const auto path = tmp_path("comments.cfg");
        write_text(path, "# a comment\n\ngrid.m = 4   # trailing comment\ngrid.n = 4\n");
        const RunConfig cfg = read_config(path.string());
        CHECK(cfg.grid_m == 4);
    }
    SECTION("dump is a normalized fixed point") {
        const auto path = tmp_path("fixpoint.cfg");
        write_text(path, "method = indirect\nsweep.direction = cold-start\nosc.damping = 0.25\n");
        const RunConfig cfg = read_config(path.string());
        const auto dumped = tmp_path("fixpoint_dump.cfg");
        write_text(dumped, cfg.dump());
        const RunConfig cfg2 = read_config(dumped.string());
        CHECK(cfg2.dump() == cfg.dump());
    }
}
