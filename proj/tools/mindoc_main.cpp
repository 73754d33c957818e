// mindoc — minimum direct-operating-cost cruise and route planning CLI.
//
// Subcommands: airspeed (single-point optimal speed), cruise (fixed-range
// two-point boundary problem), plan (obstacle-avoiding minimum-DOC route),
// citygen (random building field generator).

#include "mindoc/errors.hpp"
#include "mindoc/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct CommonOverrides {
    std::optional<double> beta;
    std::optional<double> time_cost;
    std::optional<double> fuel_cost;
    std::optional<double> tsfc;
    std::optional<std::string> tsfc_mode;
    std::optional<double> step;
};

void add_overrides(CLI::App* cmd, CommonOverrides& ov) {
    cmd->add_option("--beta", ov.beta, "Electrification fraction override in [0,1]");
    cmd->add_option("--ct", ov.time_cost, "Time cost override (USD/s)");
    cmd->add_option("--cf", ov.fuel_cost, "Fuel price override (USD/kWh)");
    cmd->add_option("--sfc", ov.tsfc, "Thrust-specific fuel consumption override (kg/(N s))");
    cmd->add_option("--tsfc-mode", ov.tsfc_mode, "TSFC convention: mass or weight");
    cmd->add_option("--step", ov.step, "Integrator step override (s)");
}

void apply_overrides(mindoc::ScenarioConfig& config, const CommonOverrides& ov) {
    if (ov.beta) config.powertrain.beta = *ov.beta;
    if (ov.time_cost) config.costs.time_cost = *ov.time_cost;
    if (ov.fuel_cost) config.costs.fuel_cost = *ov.fuel_cost;
    if (ov.tsfc) config.powertrain.tsfc = *ov.tsfc;
    if (ov.tsfc_mode) {
        if (*ov.tsfc_mode == "mass")
            config.powertrain.tsfc_mode = mindoc::TsfcMode::mass;
        else if (*ov.tsfc_mode == "weight")
            config.powertrain.tsfc_mode = mindoc::TsfcMode::weight;
        else
            throw mindoc::ConfigError("--tsfc-mode must be \"mass\" or \"weight\"");
    }
    if (ov.step) config.step_s = *ov.step;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum direct-operating-cost cruise optimizer and route planner"};
    app.require_subcommand(1);

    std::string config_path;
    CommonOverrides airspeed_ov, cruise_ov, plan_ov, city_ov;

    // -- airspeed -----------------------------------------------------------
    auto* airspeed = app.add_subcommand(
        "airspeed", "Solve the optimal cruise speed at one weight (or sweep weights)");
    airspeed->add_option("--config", config_path, "Scenario JSON")->required();
    mindoc::AirspeedOptions airspeed_opts;
    airspeed->add_option("--weight", airspeed_opts.weight, "Aircraft weight (N)");
    airspeed->add_option("--jw", airspeed_opts.costate,
                         "Weight costate (kWh/N); 0 treats weight as constant");
    airspeed->add_option("--sweep", airspeed_opts.sweep,
                         "Tabulate this many weights from empty to MTOW");
    airspeed->add_option("--out", airspeed_opts.out, "Write a JSON artifact here");
    add_overrides(airspeed, airspeed_ov);

    // -- cruise -------------------------------------------------------------
    auto* cruise = app.add_subcommand(
        "cruise", "Fly a fixed range at minimum DOC (costate shooting + RK4)");
    cruise->add_option("--config", config_path, "Scenario JSON")->required();
    mindoc::CruiseOptions cruise_opts;
    cruise->add_flag("--recost-fuel", cruise_opts.recost_fuel,
                     "Re-price the flown trajectory as fuel-only");
    cruise->add_option("--out", cruise_opts.out, "Write a JSON artifact here");
    cruise->add_option("--csv", cruise_opts.csv, "Write the per-step profile CSV here");
    add_overrides(cruise, cruise_ov);

    // -- plan ---------------------------------------------------------------
    auto* plan = app.add_subcommand(
        "plan", "Plan an obstacle-avoiding minimum-DOC route through the world");
    plan->add_option("--config", config_path, "Scenario JSON")->required();
    mindoc::PlanOptions plan_opts;
    plan->add_option("--seed", plan_opts.seed, "Planner RNG seed override");
    plan->add_option("--samples", plan_opts.samples, "Sample budget override");
    plan->add_option("--out", plan_opts.out, "Write a JSON artifact here");
    add_overrides(plan, plan_ov);

    // -- citygen ------------------------------------------------------------
    auto* citygen =
        app.add_subcommand("citygen", "Generate a random building field world file");
    citygen->add_option("--config", config_path, "Scenario JSON")->required();
    mindoc::CitygenOptions city_opts;
    citygen->add_option("--seed", city_opts.seed, "City seed override");
    citygen->add_option("--out", city_opts.out, "World JSON path (default world.json)");
    add_overrides(citygen, city_ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        mindoc::ScenarioConfig config = mindoc::load_config(config_path);
        if (airspeed->parsed()) {
            apply_overrides(config, airspeed_ov);
            mindoc::run_airspeed(config, airspeed_opts, std::cout);
            return 0;
        }
        if (cruise->parsed()) {
            // With --recost-fuel, --cf/--sfc re-price the flown trajectory
            // instead of changing the scenario that gets flown.
            CommonOverrides ov = cruise_ov;
            if (cruise_opts.recost_fuel) {
                cruise_opts.recost_fuel_cost = ov.fuel_cost;
                cruise_opts.recost_tsfc = ov.tsfc;
                ov.fuel_cost.reset();
                ov.tsfc.reset();
            }
            apply_overrides(config, ov);
            mindoc::run_cruise(config, cruise_opts, std::cout);
            return 0;
        }
        if (plan->parsed()) {
            apply_overrides(config, plan_ov);
            return mindoc::run_plan(config, plan_opts, std::cout) ? 0 : 3;
        }
        apply_overrides(config, city_ov);
        mindoc::run_citygen(config, city_opts, std::cout);
        return 0;
    } catch (const mindoc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mindoc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        const bool planning = plan->parsed() || citygen->parsed();
        return planning ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    return 0;
}
