// Configuration loading (strict JSON schema with unknown-key rejection),
// world serialization, profile CSV export, JSON run artifacts, and the
// subcommand entry points the CLI dispatches to.
#pragma once

#include "mindoc/optimizer.hpp"
#include "mindoc/planner.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace mindoc {

/// Parameters of the procedural obstacle field.
struct CityConfig {
    std::uint64_t seed = 1;
    int buildings = 500;
    WorldExtent extent{10000.0, 5000.0};
    std::pair<double, double> radius_range{20.0, 80.0};
    std::pair<double, double> height_range{200.0, 400.0};
    double restricted_margin = 150.0;
    double buffer = 10.0;
};

/// Route endpoints plus planner knobs.
struct PlannerBlock {
    Vec2 start;
    Vec2 goal;
    PlannerConfig config;
};

/// Combustion counterfactual used to re-price a flown route.
struct RecostConfig {
    double fuel_cost = 0.0; ///< USD per kWh heating value
    double tsfc = 0.0;      ///< kg/(N s)
};

/// One scenario file, fully parsed. Blocks that a given subcommand does not
/// need may be absent; the run functions check for what they require.
struct ScenarioConfig {
    Airframe airframe;
    Powertrain powertrain;
    CostInputs costs;
    Atmosphere atmosphere;

    double heating_value = 0.0; ///< kWh per kg of fuel
    double gravity = 9.8;       ///< m/s^2
    std::optional<double> kappa_i_override;
    std::optional<double> kappa_f_override;

    double start_m = 0.0;          ///< cruise start position
    std::optional<double> range_m; ///< distance to fly (cruise subcommand)
    double initial_weight = 0.0;   ///< N
    double initial_charge = 0.0;   ///< C

    double step_s = 1.0;        ///< integrator step
    double shoot_tolerance = 0.0; ///< 0 selects the solver default
    int scan_steps = 32;

    std::optional<PlannerBlock> planner;
    std::optional<CityConfig> city;
    std::optional<std::string> world_file;
    std::optional<RecostConfig> recost;

    /// Assemble and validate the cruise parameter set.
    CruiseParams cruise_params() const;
};

/// @brief Parse a scenario file. Every key is checked against the schema;
/// unknown or mistyped keys raise ConfigError naming the dotted path.
ScenarioConfig load_config(const std::string& path);

/// World (de)serialization; round-trips exactly.
void save_world(const World& world, const std::string& path);
World load_world(const std::string& path);

/// Write the per-step cruise profile as CSV (header row, then a units
/// comment, then one row per sample).
void write_profile_csv(const CruiseProfile& profile, const std::string& path);

/// CLI option bundles (already parsed; overrides applied by the caller).
struct AirspeedOptions {
    std::optional<double> weight;  ///< N; defaults to the boundary initial weight
    double costate = 0.0;
    int sweep = 0;                 ///< >1: tabulate v*(W) over [empty, MTOW]
    std::optional<std::string> out;
};
struct CruiseOptions {
    bool recost_fuel = false;
    std::optional<double> recost_fuel_cost; ///< overrides the config recost block
    std::optional<double> recost_tsfc;
    std::optional<std::string> out;
    std::optional<std::string> csv;
};
struct PlanOptions {
    std::optional<std::uint64_t> seed; ///< planner rng_seed override
    std::optional<int> samples;
    std::optional<std::string> out;
};
struct CitygenOptions {
    std::optional<std::uint64_t> seed; ///< city seed override
    std::optional<std::string> out;    ///< world JSON path (default world.json)
};

/// Subcommand bodies: compute, narrate to `log`, optionally write artifacts.
/// They throw (ConfigError and friends) rather than returning error codes;
/// run_plan returns false when no route was found.
void run_airspeed(const ScenarioConfig& config, const AirspeedOptions& options,
                  std::ostream& log);
void run_cruise(const ScenarioConfig& config, const CruiseOptions& options,
                std::ostream& log);
bool run_plan(const ScenarioConfig& config, const PlanOptions& options, std::ostream& log);
void run_citygen(const ScenarioConfig& config, const CitygenOptions& options,
                 std::ostream& log);

/// Build (or load) the world a planning run flies in, from the city block or
/// the world_file reference.
World resolve_world(const ScenarioConfig& config, std::optional<std::uint64_t> seed_override);

} // namespace mindoc
