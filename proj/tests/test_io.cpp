// Config parsing, world/profile serialization, and subcommand driver checks.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mindoc/errors.hpp"
#include "mindoc/io.hpp"
#include "mindoc/optimizer.hpp"
#include "mindoc/planner.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace mindoc;

namespace {

std::string preset(const char* name) {
    return std::string(MINDOC_PRESET_DIR) + "/" + name;
}

std::string data_file(const char* name) {
    return std::string(MINDOC_PRESET_DIR) + "/../tests/data/" + name;
}

// Scratch files go to the system temp dir so test runs never litter the
// source tree, whatever the working directory is.
std::string write_tmp(const char* name, const std::string& text) {
    const std::string path =
        (std::filesystem::temp_directory_path() / (std::string("tmp_io_") + name)).string();
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
    out.close();
    return path;
}

std::string minimal_config(const std::string& extra = "") {
    return std::string(R"({
  "schema": 1,
  "aircraft": {
    "wing_area_m2": 11.37, "cd0": 0.035, "cd2": 0.009,
    "empty_weight_n": 2959.6, "max_takeoff_weight_n": 4625.6
  },
  "powertrain": { "beta": 1.0, "efficiency": 0.7, "supply_voltage_v": 133.2 },
  "costs": { "time_usd_per_s": 0.0005, "electricity_usd_per_kwh": 0.06 },
  "atmosphere": { "density_kg_per_m3": 1.2, "altitude_m": 300.0 })") +
           extra + "\n}\n";
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

} // namespace

TEST_CASE("the hybrid preset loads with every block intact") {
    const ScenarioConfig c = load_config(preset("efanx_intl.json"));
    CHECK(c.airframe.wing_area == 77.3);
    CHECK(c.airframe.empty_weight == 251321.0);
    CHECK(c.powertrain.beta == 0.25);
    CHECK(c.powertrain.tsfc == 2.55e-5);
    CHECK(c.powertrain.tsfc_mode == TsfcMode::mass);
    CHECK(c.costs.time_cost == 0.5);
    CHECK(c.costs.fuel_cost == 0.115);
    CHECK(c.heating_value == 11.94);
    CHECK(c.gravity == 9.8);
    CHECK(c.atmosphere.density == 0.4135);
    CHECK(c.start_m == 0.0);
    REQUIRE(c.range_m.has_value());
    CHECK(*c.range_m == 450000.0);
    CHECK(c.initial_weight == 430000.0);
    CHECK(c.initial_charge == 1516000.0);
    CHECK(c.step_s == 1.0);
    REQUIRE(c.recost.has_value());
    CHECK(c.recost->fuel_cost == 0.115);
    CHECK(c.recost->tsfc == 1.1e-5);
    CHECK_FALSE(c.planner.has_value());
    CHECK_FALSE(c.city.has_value());

    const CruiseParams params = c.cruise_params();
    CHECK(params.tradeoffs.c_mu == doctest::Approx(0.0875).epsilon(1e-15));
    CHECK(params.conv.kappa_f == doctest::Approx(1.2183673469387755).epsilon(1e-15));
}

TEST_CASE("the electric city preset loads planner and city blocks") {
    const ScenarioConfig c = load_config(preset("e430_city.json"));
    CHECK(c.powertrain.beta == 1.0);
    CHECK(c.initial_weight == 4600.0);
    CHECK(c.initial_charge == 360000.0);
    REQUIRE(c.planner.has_value());
    CHECK(c.planner->start.x == 200.0);
    CHECK(c.planner->start.y == 4800.0);
    CHECK(c.planner->goal.x == 9800.0);
    CHECK(c.planner->config.n_samples == 250);
    CHECK(c.planner->config.steer_step == 800.0);
    CHECK(c.planner->config.goal_tolerance == 150.0);
    CHECK(c.planner->config.sampler == Sampler::gaussian);
    CHECK(c.planner->config.rng_seed == 1);
    REQUIRE(c.city.has_value());
    CHECK(c.city->seed == 1);
    CHECK(c.city->buildings == 500);
    CHECK(c.city->extent.width == 10000.0);
    CHECK(c.city->extent.depth == 5000.0);
    CHECK(c.city->radius_range.first == 20.0);
    CHECK(c.city->height_range.second == 400.0);
    CHECK(c.city->restricted_margin == 150.0);
    CHECK(c.city->buffer == 10.0);
    CHECK_FALSE(c.world_file.has_value());
    CHECK_NOTHROW(c.cruise_params());
}

TEST_CASE("unknown keys are rejected with a dotted path") {
    CHECK_THROWS_WITH_AS(load_config(data_file("bad_unknown_key.json")),
                         "config: unknown key \"aircraft.wing_span_m\"", ConfigError);
}

TEST_CASE("config validation failures") {
    SUBCASE("wrong schema") {
        const std::string p = write_tmp("schema.json", [] {
            std::string t = minimal_config();
            const auto pos = t.find("\"schema\": 1");
            return t.replace(pos, 11, "\"schema\": 2");
        }());
        CHECK_THROWS_AS(load_config(p), ConfigError);
    }
    SUBCASE("city and world_file together") {
        const std::string p = write_tmp(
            "both.json",
            minimal_config(R"(,
  "city": { "extent_m": [1000.0, 1000.0] },
  "world_file": "somewhere.json")"));
        CHECK_THROWS_AS(load_config(p), ConfigError);
    }
    SUBCASE("missing required block") {
        const std::string p = write_tmp("nocosts.json", [] {
            std::string t = minimal_config();
            const auto pos = t.find("\"costs\"");
            const auto end = t.find("},", pos) + 2;
            return t.erase(pos, end - pos);
        }());
        CHECK_THROWS_AS(load_config(p), ConfigError);
    }
    SUBCASE("wrong value type") {
        const std::string p = write_tmp("badtype.json", [] {
            std::string t = minimal_config();
            const auto pos = t.find("\"beta\": 1.0");
            return t.replace(pos, 11, "\"beta\": \"one\"");
        }());
        CHECK_THROWS_AS(load_config(p), ConfigError);
    }
    SUBCASE("fuel-burning powertrain without a heating value") {
        const std::string p = write_tmp("noheat.json", [] {
            std::string t = minimal_config();
            const auto pos = t.find("\"beta\": 1.0");
            return t.replace(pos, 11, "\"beta\": 0.5, \"tsfc_kg_per_ns\": 2.55e-5");
        }());
        const ScenarioConfig c = load_config(p);
        CHECK_THROWS_AS(c.cruise_params(), ConfigError);
    }
    SUBCASE("malformed json") {
        const std::string p = write_tmp("broken.json", "{ not json");
        CHECK_THROWS_AS(load_config(p), ConfigError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_config("no_such_file_anywhere.json"), ConfigError);
    }
}

TEST_CASE("world serialization round-trips exactly") {
    const World original = generate_city(7, 40, {2000.0, 1000.0}, {20.0, 80.0},
                                         {200.0, 400.0}, 150.0, 10.0);
    const std::string path = write_tmp("world.json", "");
    save_world(original, path);
    const World loaded = load_world(path);

    CHECK(loaded.seed == original.seed);
    CHECK(loaded.extent.width == original.extent.width);
    CHECK(loaded.extent.depth == original.extent.depth);
    CHECK(loaded.buffer == original.buffer);
    CHECK(loaded.restricted_margin == original.restricted_margin);
    REQUIRE(loaded.obstacles.size() == original.obstacles.size());
    for (std::size_t i = 0; i < loaded.obstacles.size(); ++i) {
        CHECK(loaded.obstacles[i].center.x == original.obstacles[i].center.x);
        CHECK(loaded.obstacles[i].center.y == original.obstacles[i].center.y);
        CHECK(loaded.obstacles[i].radius == original.obstacles[i].radius);
        CHECK(loaded.obstacles[i].height == original.obstacles[i].height);
    }

    SUBCASE("unknown world keys are rejected") {
        const std::string bad = write_tmp(
            "badworld.json",
            R"({ "schema": 1, "extent_m": [100.0, 100.0], "obstacles": [], "wind": 3 })");
        CHECK_THROWS_AS(load_world(bad), ConfigError);
    }
}

TEST_CASE("profile CSV layout") {
    const ScenarioConfig c = load_config(preset("e430_city.json"));
    const CruiseParams params = c.cruise_params();
    const CruiseProfile prof =
        integrate_cruise({0.0, 0.0, c.initial_weight, c.initial_charge, 0.0}, 100.0, params);
    const std::string path = write_tmp("profile.csv", "");
    write_profile_csv(prof, path);

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,r,v,W,Q,J_W,doc_rate");
    std::getline(in, line);
    CHECK(line == "# units: s,m,m/s,N,C,kWh/N,USD/s");
    std::size_t rows = 0;
    double t0 = -1.0, r0 = -1.0, v0 = -1.0;
    while (std::getline(in, line)) {
        if (rows == 0)
            REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t0, &r0, &v0) == 3);
        ++rows;
    }
    CHECK(rows == prof.samples.size());
    CHECK(t0 == 0.0);
    CHECK(r0 == 0.0);
    CHECK(v0 == doctest::Approx(36.141987517618).epsilon(1e-9));
}

TEST_CASE("airspeed driver") {
    const ScenarioConfig c = load_config(preset("e430_city.json"));
    std::ostringstream log;

    SUBCASE("single point with artifact") {
        AirspeedOptions opts;
        opts.out = write_tmp("airspeed.json", "");
        run_airspeed(c, opts, log);
        CHECK(log.str().find("minimum-DOC airspeed") != std::string::npos);
        const auto j = read_json(*opts.out);
        CHECK(j.at("schema") == 1);
        CHECK(j.at("airspeed_kmh").get<double>() ==
              doctest::Approx(130.1112).epsilon(1e-6));
        CHECK(j.at("weight_n").get<double>() == 4600.0);
        CHECK_FALSE(j.at("multiple_roots").get<bool>());
    }
    SUBCASE("weight sweep") {
        AirspeedOptions opts;
        opts.sweep = 5;
        opts.out = write_tmp("sweep.json", "");
        run_airspeed(c, opts, log);
        const auto j = read_json(*opts.out);
        REQUIRE(j.at("sweep").size() == 5);
        CHECK(j.at("sweep")[0].at("weight_n").get<double>() == 2959.6);
        CHECK(j.at("sweep")[4].at("weight_n").get<double>() == 4625.6);
        // Heavier aircraft cruise faster.
        CHECK(j.at("sweep")[4].at("airspeed_mps").get<double>() >
              j.at("sweep")[0].at("airspeed_mps").get<double>());
    }
    SUBCASE("out-of-envelope weight is rejected") {
        AirspeedOptions opts;
        opts.weight = 100.0;
        CHECK_THROWS_AS(run_airspeed(c, opts, log), DomainError);
    }
}

TEST_CASE("cruise driver") {
    ScenarioConfig c = load_config(preset("efanx_intl.json"));
    c.range_m = 5000.0; // a short leg keeps the test quick
    std::ostringstream log;

    CruiseOptions opts;
    opts.out = write_tmp("cruise.json", "");
    opts.csv = write_tmp("cruise.csv", "");
    opts.recost_fuel = true;
    run_cruise(c, opts, log);

    const auto j = read_json(*opts.out);
    CHECK(j.at("summary").at("total_doc_usd").get<double>() ==
          doctest::Approx(27.941706582986).epsilon(1e-8));
    CHECK(j.at("summary").at("duration_s").get<double>() ==
          doctest::Approx(19.276903201199).epsilon(1e-8));
    CHECK(j.at("consistency").at("charge_quadrature_rel").get<double>() <= 1e-9);
    CHECK(j.at("consistency").at("fuel_quadrature_rel").get<double>() <= 1e-9);
    CHECK(j.at("shooting").at("integrations").get<int>() > 1);
    CHECK(j.at("recost").at("fuel_only_usd").get<double>() > 0.0);
    CHECK(j.at("flags").at("multiple_roots").get<bool>() == false);

    std::ifstream csv(*opts.csv);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,r,v,W,Q,J_W,doc_rate");

    SUBCASE("range is mandatory") {
        c.range_m.reset();
        CHECK_THROWS_AS(run_cruise(c, CruiseOptions{}, log), ConfigError);
    }
}

TEST_CASE("citygen and plan drivers") {
    const ScenarioConfig c = load_config(preset("e430_city.json"));
    std::ostringstream log;

    CitygenOptions city_opts;
    city_opts.seed = 5;
    city_opts.out = write_tmp("citygen_world.json", "");
    run_citygen(c, city_opts, log);
    const World written = load_world(*city_opts.out);
    CHECK(written.seed == 5);
    CHECK(written.obstacles.size() == 500);
    CHECK(log.str().find("citygen") != std::string::npos);

    SUBCASE("plan against an external empty world") {
        ScenarioConfig flat = c;
        flat.city.reset();
        World empty;
        empty.extent = {10000.0, 5000.0};
        const std::string world_path = write_tmp("empty_world.json", "");
        save_world(empty, world_path);
        flat.world_file = world_path;

        PlanOptions opts;
        opts.out = write_tmp("plan.json", "");
        const bool found = run_plan(flat, opts, log);
        CHECK(found);
        const auto j = read_json(*opts.out);
        CHECK(j.at("found").get<bool>());
        CHECK(j.at("straight_line_m").get<double>() ==
              doctest::Approx(10688.779163215975).epsilon(1e-12));
        CHECK(j.at("waypoints_m").size() >= 2);
        CHECK(j.at("total_doc_usd").get<double>() > 0.2);
        CHECK(j.at("total_doc_usd").get<double>() < 0.27);
        CHECK(j.at("best_cost_series").size() == 250);
        CHECK(j.at("stats").at("tree_size").get<int>() >= 2);
    }
    SUBCASE("plan requires a planner block") {
        const ScenarioConfig hybrid = load_config(preset("efanx_intl.json"));
        CHECK_THROWS_AS(run_plan(hybrid, PlanOptions{}, log), ConfigError);
    }
    SUBCASE("seed overrides cannot retarget a world file") {
        ScenarioConfig external = c;
        external.city.reset();
        external.world_file = *city_opts.out;
        CHECK_THROWS_AS(resolve_world(external, 9), ConfigError);
        CHECK_NOTHROW(resolve_world(external, std::nullopt));
    }
}
