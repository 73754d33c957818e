#include "mindoc/io.hpp"

#include "mindoc/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

namespace mindoc {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- parsing --

json load_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw ConfigError(std::string(what) + ": cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string(what) + ": " + path + ": " + e.what());
    }
    if (!j.is_object())
        throw ConfigError(std::string(what) + ": " + path + ": top level must be an object");
    return j;
}

std::string joined(const std::string& scope, const std::string& key) {
    return scope.empty() ? key : scope + "." + key;
}

void expect_keys(const json& obj, const std::string& scope,
                 std::initializer_list<const char*> allowed) {
    for (const auto& el : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (el.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError("config: unknown key \"" + joined(scope, el.key()) + "\"");
    }
}

const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const json& require_block(const json& obj, const std::string& scope, const char* key) {
    const json* v = find(obj, key);
    if (!v) throw ConfigError("config: missing block \"" + joined(scope, key) + "\"");
    if (!v->is_object())
        throw ConfigError("config: block \"" + joined(scope, key) + "\" must be an object");
    return *v;
}

double require_number(const json& obj, const std::string& scope, const char* key) {
    const json* v = find(obj, key);
    if (!v) throw ConfigError("config: missing key \"" + joined(scope, key) + "\"");
    if (!v->is_number())
        throw ConfigError("config: key \"" + joined(scope, key) + "\" must be a number");
    return v->get<double>();
}

double number_or(const json& obj, const std::string& scope, const char* key, double fallback) {
    return find(obj, key) ? require_number(obj, scope, key) : fallback;
}

std::optional<double> optional_number(const json& obj, const std::string& scope,
                                      const char* key) {
    if (!find(obj, key)) return std::nullopt;
    return require_number(obj, scope, key);
}

std::uint64_t uint_or(const json& obj, const std::string& scope, const char* key,
                      std::uint64_t fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_unsigned() && !v->is_number_integer())
        throw ConfigError("config: key \"" + joined(scope, key) +
                          "\" must be a non-negative integer");
    if (v->is_number_integer() && v->get<long long>() < 0)
        throw ConfigError("config: key \"" + joined(scope, key) +
                          "\" must be a non-negative integer");
    return v->get<std::uint64_t>();
}

int int_or(const json& obj, const std::string& scope, const char* key, int fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer())
        throw ConfigError("config: key \"" + joined(scope, key) + "\" must be an integer");
    return v->get<int>();
}

std::string string_or(const json& obj, const std::string& scope, const char* key,
                      const std::string& fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string())
        throw ConfigError("config: key \"" + joined(scope, key) + "\" must be a string");
    return v->get<std::string>();
}

std::pair<double, double> require_range(const json& obj, const std::string& scope,
                                        const char* key) {
    const json* v = find(obj, key);
    if (!v) throw ConfigError("config: missing key \"" + joined(scope, key) + "\"");
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number())
        throw ConfigError("config: key \"" + joined(scope, key) +
                          "\" must be an array of two numbers");
    return {(*v)[0].get<double>(), (*v)[1].get<double>()};
}

std::pair<double, double> range_or(const json& obj, const std::string& scope, const char* key,
                                   std::pair<double, double> fallback) {
    return find(obj, key) ? require_range(obj, scope, key) : fallback;
}

Vec2 require_vec2(const json& obj, const std::string& scope, const char* key) {
    const auto [x, y] = require_range(obj, scope, key);
    return {x, y};
}

// ---------------------------------------------------------------- writing --

void write_text_file(const std::string& path, const std::string& text, const char* what) {
    std::ofstream out(path);
    if (!out) throw ResourceError(std::string(what) + ": cannot write \"" + path + "\"");
    out << text;
    if (!out) throw ResourceError(std::string(what) + ": write to \"" + path + "\" failed");
}

void write_json_file(const json& j, const std::string& path, const char* what) {
    write_text_file(path, j.dump(2) + "\n", what);
}

json series_to_json(const std::vector<double>& series) {
    json arr = json::array();
    for (double v : series) {
        if (std::isfinite(v))
            arr.push_back(v);
        else
            arr.push_back(nullptr); // incumbent not found yet
    }
    return arr;
}

} // namespace

// ------------------------------------------------------------ load_config --

ScenarioConfig load_config(const std::string& path) {
    const json j = load_json_file(path, "config");
    expect_keys(j, "",
                {"schema", "aircraft", "powertrain", "costs", "conversions", "atmosphere",
                 "boundary", "integrator", "shooting", "planner", "city", "world_file",
                 "recost"});
    if (const json* s = find(j, "schema")) {
        if (!s->is_number_integer() || s->get<int>() != 1)
            throw ConfigError("config: schema must be the integer 1");
    }

    ScenarioConfig c;

    const json& aircraft = require_block(j, "", "aircraft");
    expect_keys(aircraft, "aircraft",
                {"wing_area_m2", "cd0", "cd2", "empty_weight_n", "max_takeoff_weight_n"});
    c.airframe.wing_area = require_number(aircraft, "aircraft", "wing_area_m2");
    c.airframe.cd0 = require_number(aircraft, "aircraft", "cd0");
    c.airframe.cd2 = require_number(aircraft, "aircraft", "cd2");
    c.airframe.empty_weight = require_number(aircraft, "aircraft", "empty_weight_n");
    c.airframe.max_takeoff_weight = require_number(aircraft, "aircraft", "max_takeoff_weight_n");

    const json& powertrain = require_block(j, "", "powertrain");
    expect_keys(powertrain, "powertrain",
                {"beta", "efficiency", "supply_voltage_v", "tsfc_kg_per_ns", "tsfc_mode"});
    c.powertrain.beta = require_number(powertrain, "powertrain", "beta");
    c.powertrain.efficiency = require_number(powertrain, "powertrain", "efficiency");
    c.powertrain.supply_voltage = number_or(powertrain, "powertrain", "supply_voltage_v", 0.0);
    c.powertrain.tsfc = number_or(powertrain, "powertrain", "tsfc_kg_per_ns", 0.0);
    const std::string mode = string_or(powertrain, "powertrain", "tsfc_mode", "mass");
    if (mode == "mass")
        c.powertrain.tsfc_mode = TsfcMode::mass;
    else if (mode == "weight")
        c.powertrain.tsfc_mode = TsfcMode::weight;
    else
        throw ConfigError("config: key \"powertrain.tsfc_mode\" must be \"mass\" or \"weight\"");

    const json& costs = require_block(j, "", "costs");
    expect_keys(costs, "costs",
                {"time_usd_per_s", "electricity_usd_per_kwh", "fuel_usd_per_kwh"});
    c.costs.time_cost = number_or(costs, "costs", "time_usd_per_s", 0.0);
    c.costs.electricity_cost = number_or(costs, "costs", "electricity_usd_per_kwh", 0.0);
    c.costs.fuel_cost = number_or(costs, "costs", "fuel_usd_per_kwh", 0.0);

    if (const json* conv = find(j, "conversions")) {
        if (!conv->is_object())
            throw ConfigError("config: block \"conversions\" must be an object");
        expect_keys(*conv, "conversions",
                    {"fuel_heating_value_kwh_per_kg", "gravity_m_per_s2", "kappa_i_kwh_per_j",
                     "kappa_f_kwh_per_n"});
        c.heating_value = number_or(*conv, "conversions", "fuel_heating_value_kwh_per_kg", 0.0);
        c.gravity = number_or(*conv, "conversions", "gravity_m_per_s2", 9.8);
        c.kappa_i_override = optional_number(*conv, "conversions", "kappa_i_kwh_per_j");
        c.kappa_f_override = optional_number(*conv, "conversions", "kappa_f_kwh_per_n");
    }

    const json& atmosphere = require_block(j, "", "atmosphere");
    expect_keys(atmosphere, "atmosphere", {"density_kg_per_m3", "altitude_m"});
    c.atmosphere.density = require_number(atmosphere, "atmosphere", "density_kg_per_m3");
    c.atmosphere.altitude = number_or(atmosphere, "atmosphere", "altitude_m", 0.0);

    if (const json* boundary = find(j, "boundary")) {
        if (!boundary->is_object())
            throw ConfigError("config: block \"boundary\" must be an object");
        expect_keys(*boundary, "boundary",
                    {"start_m", "range_m", "initial_weight_n", "initial_charge_c"});
        c.start_m = number_or(*boundary, "boundary", "start_m", 0.0);
        c.range_m = optional_number(*boundary, "boundary", "range_m");
        c.initial_weight = number_or(*boundary, "boundary", "initial_weight_n", 0.0);
        c.initial_charge = number_or(*boundary, "boundary", "initial_charge_c", 0.0);
    }

    if (const json* integrator = find(j, "integrator")) {
        if (!integrator->is_object())
            throw ConfigError("config: block \"integrator\" must be an object");
        expect_keys(*integrator, "integrator", {"step_s"});
        c.step_s = number_or(*integrator, "integrator", "step_s", 1.0);
    }

    if (const json* shooting = find(j, "shooting")) {
        if (!shooting->is_object())
            throw ConfigError("config: block \"shooting\" must be an object");
        expect_keys(*shooting, "shooting", {"tolerance", "scan_steps"});
        c.shoot_tolerance = number_or(*shooting, "shooting", "tolerance", 0.0);
        c.scan_steps = int_or(*shooting, "shooting", "scan_steps", 32);
    }

    if (const json* planner = find(j, "planner")) {
        if (!planner->is_object())
            throw ConfigError("config: block \"planner\" must be an object");
        expect_keys(*planner, "planner",
                    {"start_xy_m", "goal_xy_m", "n_samples", "steer_step_m",
                     "neighbor_radius_scale", "goal_tolerance_m", "sampler", "sigma_lateral_m",
                     "rng_seed"});
        PlannerBlock block;
        block.start = require_vec2(*planner, "planner", "start_xy_m");
        block.goal = require_vec2(*planner, "planner", "goal_xy_m");
        block.config.n_samples = int_or(*planner, "planner", "n_samples", 250);
        block.config.steer_step = number_or(*planner, "planner", "steer_step_m", 800.0);
        block.config.neighbor_radius_scale = number_or(
            *planner, "planner", "neighbor_radius_scale", block.config.neighbor_radius_scale);
        block.config.goal_tolerance = number_or(*planner, "planner", "goal_tolerance_m", 150.0);
        const std::string sampler = string_or(*planner, "planner", "sampler", "gaussian");
        if (sampler == "gaussian")
            block.config.sampler = Sampler::gaussian;
        else if (sampler == "uniform")
            block.config.sampler = Sampler::uniform;
        else
            throw ConfigError(
                "config: key \"planner.sampler\" must be \"gaussian\" or \"uniform\"");
        block.config.sigma_lateral = optional_number(*planner, "planner", "sigma_lateral_m");
        block.config.rng_seed = uint_or(*planner, "planner", "rng_seed", 1);
        c.planner = block;
    }

    if (const json* city = find(j, "city")) {
        if (!city->is_object()) throw ConfigError("config: block \"city\" must be an object");
        expect_keys(*city, "city",
                    {"seed", "buildings", "extent_m", "radius_range_m", "height_range_m",
                     "restricted_margin_m", "buffer_m"});
        CityConfig cc;
        cc.seed = uint_or(*city, "city", "seed", cc.seed);
        cc.buildings = int_or(*city, "city", "buildings", cc.buildings);
        const auto extent =
            range_or(*city, "city", "extent_m", {cc.extent.width, cc.extent.depth});
        cc.extent = {extent.first, extent.second};
        cc.radius_range = range_or(*city, "city", "radius_range_m", cc.radius_range);
        cc.height_range = range_or(*city, "city", "height_range_m", cc.height_range);
        cc.restricted_margin = number_or(*city, "city", "restricted_margin_m",
                                         cc.restricted_margin);
        cc.buffer = number_or(*city, "city", "buffer_m", cc.buffer);
        c.city = cc;
    }

    if (const json* wf = find(j, "world_file")) {
        if (!wf->is_string()) throw ConfigError("config: key \"world_file\" must be a string");
        c.world_file = wf->get<std::string>();
    }
    if (c.city && c.world_file)
        throw ConfigError("config: provide either \"city\" or \"world_file\", not both");

    if (const json* recost = find(j, "recost")) {
        if (!recost->is_object())
            throw ConfigError("config: block \"recost\" must be an object");
        expect_keys(*recost, "recost", {"fuel_usd_per_kwh", "tsfc_kg_per_ns"});
        RecostConfig rc;
        rc.fuel_cost = require_number(*recost, "recost", "fuel_usd_per_kwh");
        rc.tsfc = require_number(*recost, "recost", "tsfc_kg_per_ns");
        c.recost = rc;
    }

    return c;
}

CruiseParams ScenarioConfig::cruise_params() const {
    if (powertrain.beta < 1.0 && heating_value <= 0.0 && !kappa_f_override)
        throw ConfigError("config: conversions.fuel_heating_value_kwh_per_kg is required "
                          "for powertrains that burn fuel");
    const ConversionFactors conv =
        make_conversions(heating_value, gravity, kappa_i_override, kappa_f_override);
    return CruiseParams::make(airframe, powertrain, atmosphere, costs, conv);
}

// ------------------------------------------------------------------ world --

void save_world(const World& world, const std::string& path) {
    world.validate();
    json j;
    j["schema"] = 1;
    j["seed"] = world.seed;
    j["extent_m"] = {world.extent.width, world.extent.depth};
    j["buffer_m"] = world.buffer;
    j["restricted_margin_m"] = world.restricted_margin;
    json obstacles = json::array();
    for (const auto& o : world.obstacles) {
        obstacles.push_back({{"x_m", o.center.x},
                             {"y_m", o.center.y},
                             {"radius_m", o.radius},
                             {"height_m", o.height}});
    }
    j["obstacles"] = std::move(obstacles);
    write_json_file(j, path, "world");
}

World load_world(const std::string& path) {
    const json j = load_json_file(path, "world");
    expect_keys(j, "world",
                {"schema", "seed", "extent_m", "buffer_m", "restricted_margin_m", "obstacles"});
    if (const json* s = find(j, "schema")) {
        if (!s->is_number_integer() || s->get<int>() != 1)
            throw ConfigError("world: schema must be the integer 1");
    }
    World world;
    world.seed = uint_or(j, "world", "seed", 0);
    const auto extent = require_range(j, "world", "extent_m");
    world.extent = {extent.first, extent.second};
    world.buffer = number_or(j, "world", "buffer_m", 10.0);
    world.restricted_margin = number_or(j, "world", "restricted_margin_m", 150.0);
    const json* obstacles = find(j, "obstacles");
    if (!obstacles || !obstacles->is_array())
        throw ConfigError("world: missing array \"obstacles\"");
    for (std::size_t i = 0; i < obstacles->size(); ++i) {
        const json& o = (*obstacles)[i];
        const std::string scope = "world.obstacles[" + std::to_string(i) + "]";
        if (!o.is_object()) throw ConfigError("config: \"" + scope + "\" must be an object");
        expect_keys(o, scope, {"x_m", "y_m", "radius_m", "height_m"});
        CylinderObstacle cyl;
        cyl.center.x = require_number(o, scope, "x_m");
        cyl.center.y = require_number(o, scope, "y_m");
        cyl.radius = require_number(o, scope, "radius_m");
        cyl.height = require_number(o, scope, "height_m");
        world.obstacles.push_back(cyl);
    }
    world.validate();
    return world;
}

// -------------------------------------------------------------- profiles --

void write_profile_csv(const CruiseProfile& profile, const std::string& path) {
    std::string text;
    text.reserve(profile.samples.size() * 96 + 128);
    text += "t,r,v,W,Q,J_W,doc_rate\n";
    text += "# units: s,m,m/s,N,C,kWh/N,USD/s\n";
    char row[256];
    for (const auto& s : profile.samples) {
        std::snprintf(row, sizeof(row), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", s.t,
                      s.r, s.airspeed, s.weight, s.charge, s.costate, s.doc_rate);
        text += row;
    }
    write_text_file(path, text, "profile");
}

// --------------------------------------------------------------- run_* ----

namespace {

double bounded_initial_weight(const ScenarioConfig& config, double weight, const char* what) {
    if (!(weight > 0.0))
        throw ConfigError(std::string(what) +
                          ": an initial weight is required (boundary.initial_weight_n)");
    if (weight < config.airframe.empty_weight || weight > config.airframe.max_takeoff_weight)
        throw DomainError(std::string(what) +
                          ": initial weight must lie between empty weight and MTOW");
    return weight;
}

std::ostream& fixed6(std::ostream& os) { return os << std::fixed << std::setprecision(6); }

} // namespace

void run_airspeed(const ScenarioConfig& config, const AirspeedOptions& options,
                  std::ostream& log) {
    const CruiseParams params = config.cruise_params();
    json artifact;
    artifact["schema"] = 1;
    artifact["mode"] = "airspeed";

    if (options.sweep > 1) {
        const double lo = config.airframe.empty_weight;
        const double hi = config.airframe.max_takeoff_weight;
        json rows = json::array();
        log << "minimum-DOC airspeed sweep (" << options.sweep << " weights, costate "
            << options.costate << ")\n";
        for (int i = 0; i < options.sweep; ++i) {
            const double w = lo + (hi - lo) * static_cast<double>(i) /
                                      static_cast<double>(options.sweep - 1);
            const AirspeedSolution sol = optimal_airspeed(w, options.costate, params);
            rows.push_back({{"weight_n", w},
                            {"airspeed_mps", sol.airspeed},
                            {"airspeed_kmh", sol.airspeed * 3.6},
                            {"multiple_roots", sol.multiple_roots}});
            log << fixed6 << "  W = " << std::setw(14) << w << " N   v* = " << std::setw(12)
                << sol.airspeed << " m/s  (" << sol.airspeed * 3.6 << " km/h)"
                << (sol.multiple_roots ? "  [multiple roots]" : "") << "\n";
        }
        artifact["sweep"] = std::move(rows);
    } else {
        const double fallback = config.initial_weight > 0.0 ? config.initial_weight
                                                            : config.airframe.max_takeoff_weight;
        const double weight = options.weight.value_or(fallback);
        bounded_initial_weight(config, weight, "airspeed");
        const AirspeedSolution sol = optimal_airspeed(weight, options.costate, params);
        const double d = drag(params.airframe, params.atmosphere.density, weight, sol.airspeed);
        const double rate = doc_rate(sol.airspeed, d, params.powertrain, params.costs,
                                     params.conv);
        const double v_md = min_drag_speed(params.airframe, params.atmosphere.density, weight);

        log << fixed6 << "minimum-DOC airspeed: " << sol.airspeed << " m/s ("
            << sol.airspeed * 3.6 << " km/h)\n";
        log << fixed6 << "  weight " << weight << " N, costate " << options.costate << "\n";
        log << fixed6 << "  drag " << d << " N, DOC rate " << std::setprecision(9) << rate
            << " USD/s (" << rate / sol.airspeed * 1000.0 << " USD/km)\n";
        log << fixed6 << "  minimum-drag speed " << v_md << " m/s\n";
        if (sol.multiple_roots)
            log << "  note: several stationary speeds; cheapest per meter selected\n";

        artifact["weight_n"] = weight;
        artifact["costate"] = options.costate;
        artifact["airspeed_mps"] = sol.airspeed;
        artifact["airspeed_kmh"] = sol.airspeed * 3.6;
        artifact["drag_n"] = d;
        artifact["doc_rate_usd_per_s"] = rate;
        artifact["doc_per_km_usd"] = rate / sol.airspeed * 1000.0;
        artifact["minimum_drag_speed_mps"] = v_md;
        artifact["multiple_roots"] = sol.multiple_roots;
    }

    if (options.out) write_json_file(artifact, *options.out, "artifact");
}

void run_cruise(const ScenarioConfig& config, const CruiseOptions& options,
                std::ostream& log) {
    const CruiseParams params = config.cruise_params();
    if (!config.range_m)
        throw ConfigError("cruise: boundary.range_m is required");
    const double w0 = bounded_initial_weight(config, config.initial_weight, "cruise");

    const CruiseBoundary boundary{config.start_m, config.start_m + *config.range_m, w0,
                                  config.initial_charge};
    const CruiseProfile profile =
        shoot(boundary, params, config.step_s, config.shoot_tolerance, config.scan_steps);
    const CruiseSummary& sum = profile.summary;
    const CruiseSample& first = profile.samples.front();
    const CruiseSample& last = profile.samples.back();

    const double charge_spent = config.initial_charge - last.charge;
    const double fuel_weight = w0 - last.weight;
    const double charge_quorum = std::max(std::abs(charge_spent), 1.0);
    const double fuel_quorum = std::max(std::abs(fuel_weight), 1.0);
    const double charge_rel = std::abs(profile.charge_integral - charge_spent) / charge_quorum;
    const double fuel_rel = std::abs(profile.fuel_weight_integral - fuel_weight) / fuel_quorum;

    log << fixed6 << "cruise " << *config.range_m / 1000.0 << " km at density "
        << params.atmosphere.density << " kg/m3\n";
    log << fixed6 << "  duration      " << sum.duration << " s\n";
    log << fixed6 << "  fuel burned   " << sum.fuel_mass << " kg\n";
    log << fixed6 << "  charge spent  " << sum.charge_spent_ah << " Ah\n";
    log << fixed6 << "  total DOC     " << sum.total_doc << " USD\n";
    log << fixed6 << "  hourly DOC    " << sum.hourly_doc << " USD/h\n";
    log << fixed6 << "  airspeed      " << first.airspeed << " -> " << last.airspeed
        << " m/s\n";
    log << std::setprecision(10) << "  shooting      costate0 " << profile.costate_initial
        << ", " << profile.shoot_iterations << " integrations, final costate "
        << std::scientific << last.costate << std::defaultfloat << "\n";

    json artifact;
    artifact["schema"] = 1;
    artifact["mode"] = "cruise";
    artifact["boundary"] = {{"start_m", boundary.r0},
                            {"target_m", boundary.rf},
                            {"initial_weight_n", boundary.w0},
                            {"initial_charge_c", boundary.q0}};
    artifact["summary"] = {{"duration_s", sum.duration},
                           {"fuel_kg", sum.fuel_mass},
                           {"charge_spent_ah", sum.charge_spent_ah},
                           {"total_doc_usd", sum.total_doc},
                           {"hourly_doc_usd_per_h", sum.hourly_doc},
                           {"final_position_m", sum.final_position}};
    artifact["shooting"] = {{"costate_initial", profile.costate_initial},
                            {"integrations", profile.shoot_iterations},
                            {"final_costate", last.costate}};
    artifact["flags"] = {{"multiple_roots", profile.root_flagged},
                         {"jbar_went_negative", profile.jbar_went_negative}};
    artifact["consistency"] = {{"charge_quadrature_rel", charge_rel},
                               {"fuel_quadrature_rel", fuel_rel}};
    artifact["airspeed_initial_mps"] = first.airspeed;
    artifact["airspeed_final_mps"] = last.airspeed;

    if (options.recost_fuel) {
        double price = 0.0, tsfc = 0.0;
        if (config.recost) {
            price = config.recost->fuel_cost;
            tsfc = config.recost->tsfc;
        }
        if (options.recost_fuel_cost) price = *options.recost_fuel_cost;
        if (options.recost_tsfc) tsfc = *options.recost_tsfc;
        if (price <= 0.0 || tsfc <= 0.0)
            throw ConfigError("recost: a fuel price and tsfc are required "
                              "(config \"recost\" block, or --cf and --sfc)");
        const double recost = doc_recost_fuel_only(profile, params, tsfc, price);
        log << fixed6 << "  fuel-only recost " << recost << " USD ("
            << recost / sum.total_doc << "x the flown DOC)\n";
        artifact["recost"] = {{"fuel_only_usd", recost},
                              {"tsfc_kg_per_ns", tsfc},
                              {"fuel_usd_per_kwh", price},
                              {"ratio_vs_doc", recost / sum.total_doc}};
    }

    if (options.csv) {
        write_profile_csv(profile, *options.csv);
        log << "  profile -> " << *options.csv << "\n";
    }
    if (options.out) write_json_file(artifact, *options.out, "artifact");
}

World resolve_world(const ScenarioConfig& config, std::optional<std::uint64_t> seed_override) {
    if (config.world_file) {
        if (seed_override)
            throw ConfigError("config: a seed override cannot apply to a world_file");
        return load_world(*config.world_file);
    }
    if (!config.city)
        throw ConfigError("config: a \"city\" block or \"world_file\" is required");
    const CityConfig& cc = *config.city;
    std::vector<Vec2> protected_points;
    if (config.planner) {
        protected_points.push_back(config.planner->start);
        protected_points.push_back(config.planner->goal);
    }
    return generate_city(seed_override.value_or(cc.seed), cc.buildings, cc.extent,
                         cc.radius_range, cc.height_range, cc.restricted_margin, cc.buffer,
                         protected_points);
}

bool run_plan(const ScenarioConfig& config, const PlanOptions& options, std::ostream& log) {
    const CruiseParams params = config.cruise_params();
    if (!config.planner)
        throw ConfigError("plan: a \"planner\" block is required");
    const double w0 = bounded_initial_weight(config, config.initial_weight, "plan");

    const World world = resolve_world(config, std::nullopt);
    PlannerConfig pc = config.planner->config;
    if (options.seed) pc.rng_seed = *options.seed;
    if (options.samples) pc.n_samples = *options.samples;
    pc.integrator_step = config.step_s;

    const ArrivalState start_state{0.0, w0, config.initial_charge};
    const PlanResult result =
        plan(world, config.planner->start, config.planner->goal, start_state, params, pc);

    const double straight = distance(config.planner->start, config.planner->goal);
    log << "plan: tree " << result.stats.tree_size << " nodes, "
        << result.stats.rejected_samples << " rejected samples, " << result.stats.rewires
        << " rewires, seed " << pc.rng_seed << "\n";
    if (result.found) {
        log << fixed6 << "  route " << result.total_length << " m ("
            << result.total_length / straight << "x straight line), "
            << result.waypoints.size() << " waypoints\n";
        log << fixed6 << "  DOC " << result.total_doc << " USD, duration " << result.duration
            << " s\n";
        log << fixed6 << "  arrival weight " << result.final_state.weight << " N, charge "
            << result.final_state.charge << " C\n";
    } else {
        log << "  no route found within the sample budget\n";
    }

    json artifact;
    artifact["schema"] = 1;
    artifact["mode"] = "plan";
    artifact["found"] = result.found;
    artifact["straight_line_m"] = straight;
    json waypoints = json::array();
    for (const auto& p : result.waypoints) waypoints.push_back({p.x, p.y});
    artifact["waypoints_m"] = std::move(waypoints);
    artifact["total_doc_usd"] = result.found ? json(result.total_doc) : json(nullptr);
    artifact["total_length_m"] = result.found ? json(result.total_length) : json(nullptr);
    artifact["duration_s"] = result.found ? json(result.duration) : json(nullptr);
    artifact["final_state"] = {{"t_s", result.final_state.t},
                               {"weight_n", result.final_state.weight},
                               {"charge_c", result.final_state.charge}};
    artifact["best_cost_series"] = series_to_json(result.best_cost_series);
    artifact["stats"] = {{"tree_size", result.stats.tree_size},
                         {"rejected_samples", result.stats.rejected_samples},
                         {"rewires", result.stats.rewires},
                         {"goal_relinks", result.stats.goal_relinks}};
    artifact["world"] = {{"obstacles", world.obstacles.size()},
                         {"active_discs",
                          active_obstacles(world, params.atmosphere.altitude).size()},
                         {"seed", world.seed}};
    if (options.out) write_json_file(artifact, *options.out, "artifact");
    return result.found;
}

void run_citygen(const ScenarioConfig& config, const CitygenOptions& options,
                 std::ostream& log) {
    if (!config.city) throw ConfigError("citygen: a \"city\" block is required");
    const World world = resolve_world(config, options.seed);
    const std::string path = options.out.value_or("world.json");
    save_world(world, path);
    const std::size_t active = active_obstacles(world, config.atmosphere.altitude).size();
    log << "citygen: " << world.obstacles.size() << " buildings (seed " << world.seed << "), "
        << active << " active at " << config.atmosphere.altitude << " m -> " << path << "\n";
}

} // namespace mindoc
