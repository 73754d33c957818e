#include "mindoc/planner.hpp"

#include "mindoc/errors.hpp"
#include "mindoc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mindoc {

namespace {

constexpr double kRewireEps = 1e-12;   // strict-improvement guard, USD
constexpr long kDrawsPerBuilding = 1000; // clearance redraw budget

double dist2(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

bool point_free(const Vec2& p, const std::vector<Disc>& discs) {
    for (const auto& d : discs)
        if (dist2(p, d.center) < d.radius * d.radius) return false;
    return true;
}

} // namespace

double distance(const Vec2& a, const Vec2& b) { return std::sqrt(dist2(a, b)); }

void World::validate() const {
    if (extent.width <= 0.0 || extent.depth <= 0.0)
        throw DomainError("world: extent must be positive in both directions");
    if (buffer < 0.0) throw DomainError("world: buffer must be >= 0");
    if (restricted_margin < 0.0) throw DomainError("world: restricted_margin must be >= 0");
    for (const auto& o : obstacles) {
        if (o.radius <= 0.0) throw DomainError("world: obstacle radius must be > 0");
        if (o.height <= 0.0) throw DomainError("world: obstacle height must be > 0");
    }
}

World generate_city(std::uint64_t seed, int n, const WorldExtent& extent,
                    std::pair<double, double> radius_range,
                    std::pair<double, double> height_range, double restricted_margin,
                    double buffer, const std::vector<Vec2>& protected_points) {
    if (n < 0) throw DomainError("generate_city: building count must be >= 0");
    if (extent.width <= 0.0 || extent.depth <= 0.0)
        throw DomainError("generate_city: extent must be positive in both directions");
    if (!(radius_range.first > 0.0) || radius_range.second < radius_range.first)
        throw DomainError("generate_city: radius range must satisfy 0 < lo <= hi");
    if (!(height_range.first > 0.0) || height_range.second < height_range.first)
        throw DomainError("generate_city: height range must satisfy 0 < lo <= hi");
    if (restricted_margin < 0.0)
        throw DomainError("generate_city: restricted_margin must be >= 0");
    if (buffer < 0.0) throw DomainError("generate_city: buffer must be >= 0");

    World world;
    world.extent = extent;
    world.buffer = buffer;
    world.restricted_margin = restricted_margin;
    world.seed = seed;
    world.obstacles.reserve(static_cast<std::size_t>(n));

    Rng rng(seed);
    const long budget = kDrawsPerBuilding * (static_cast<long>(n) + 1);
    long draws = 0;
    while (static_cast<int>(world.obstacles.size()) < n) {
        if (++draws > budget)
            throw ResourceError("generate_city: start/goal clearance rejected too many "
                                "draws; the protected points leave no room");
        CylinderObstacle o;
        o.center.x = rng.uniform_in(0.0, extent.width);
        o.center.y = rng.uniform_in(0.0, extent.depth);
        o.radius = rng.uniform_in(radius_range.first, radius_range.second);
        o.height = rng.uniform_in(height_range.first, height_range.second);

        bool clear = true;
        for (const auto& p : protected_points) {
            if (distance(o.center, p) < o.radius + buffer + restricted_margin) {
                clear = false;
                break;
            }
        }
        if (clear) world.obstacles.push_back(o);
    }
    return world;
}

std::vector<Disc> active_obstacles(const World& world, double cruise_altitude) {
    world.validate();
    std::vector<Disc> discs;
    for (const auto& o : world.obstacles)
        if (o.height >= cruise_altitude)
            discs.push_back({o.center, o.radius + world.buffer});
    return discs;
}

bool collision_free(const Vec2& a, const Vec2& b, const std::vector<Disc>& discs) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    for (const auto& d : discs) {
        double t = 0.0;
        if (len2 > 0.0) {
            t = ((d.center.x - a.x) * dx + (d.center.y - a.y) * dy) / len2;
            t = std::clamp(t, 0.0, 1.0);
        }
        const Vec2 closest{a.x + t * dx, a.y + t * dy};
        if (dist2(closest, d.center) < d.radius * d.radius) return false;
    }
    return true;
}

EdgeResult edge_cost(const ArrivalState& from, const Vec2& p1, const Vec2& p2,
                     const CruiseParams& params, double step) {
    const double len = distance(p1, p2);
    if (len <= 0.0) return {0.0, from};

    if (params.powertrain.beta == 1.0) {
        // Constant weight: the optimal speed and cost rate hold along the
        // whole edge, so the segment integrates in closed form.
        const double v = electric_quartic_root(from.weight, params);
        const double d = drag(params.airframe, params.atmosphere.density, from.weight, v);
        const double rate = doc_rate(v, d, params.powertrain, params.costs, params.conv);
        const double current = params.powertrain.beta * d * v /
                               (params.powertrain.efficiency * params.powertrain.supply_voltage);
        const double dt = len / v;
        return {rate * dt, {from.t + dt, from.weight, from.charge - current * dt}};
    }

    const CruiseProfile profile = integrate_cruise({from.t, 0.0, from.weight, from.charge, 0.0},
                                                   len, params, step, /*hold_costate=*/true);
    const CruiseSample& last = profile.samples.back();
    return {profile.summary.total_doc, {last.t, last.weight, last.charge}};
}

void PlannerConfig::validate() const {
    if (n_samples <= 0) throw DomainError("planner: n_samples must be > 0");
    if (steer_step <= 0.0) throw DomainError("planner: steer_step must be > 0");
    if (neighbor_radius_scale <= 0.0)
        throw DomainError("planner: neighbor_radius_scale must be > 0");
    if (goal_tolerance < 0.0) throw DomainError("planner: goal_tolerance must be >= 0");
    if (sigma_lateral && *sigma_lateral <= 0.0)
        throw DomainError("planner: sigma_lateral must be > 0");
    if (integrator_step <= 0.0) throw DomainError("planner: integrator_step must be > 0");
}

PlanResult plan(const World& world, const Vec2& start, const Vec2& goal,
                const ArrivalState& start_state, const CruiseParams& params,
                const PlannerConfig& config) {
    world.validate();
    config.validate();
    if (!(start_state.weight > 0.0))
        throw DomainError("planner: start state must carry a positive weight");
    if (start_state.charge < 0.0)
        throw DomainError("planner: start state must carry a non-negative charge");

    auto inside = [&](const Vec2& p) {
        return p.x >= 0.0 && p.x <= world.extent.width && p.y >= 0.0 &&
               p.y <= world.extent.depth;
    };
    if (!inside(start)) throw DomainError("planner: start lies outside the world extent");
    if (!inside(goal)) throw DomainError("planner: goal lies outside the world extent");

    const std::vector<Disc> discs = active_obstacles(world, params.atmosphere.altitude);
    if (!point_free(start, discs))
        throw DomainError("planner: start lies inside an active obstacle");
    if (!point_free(goal, discs))
        throw DomainError("planner: goal lies inside an active obstacle");

    const double straight = distance(start, goal);
    if (straight <= 0.0) throw DomainError("planner: start and goal coincide");

    const double diag = std::hypot(world.extent.width, world.extent.depth);
    const double sigma = config.sigma_lateral.value_or(world.extent.depth / 4.0);
    const Vec2 axis{(goal.x - start.x) / straight, (goal.y - start.y) / straight};
    const Vec2 lateral{-axis.y, axis.x};

    Rng rng(config.rng_seed);
    const double inf = std::numeric_limits<double>::infinity();

    PlanResult result;
    std::vector<PlanNode>& nodes = result.tree;
    nodes.push_back({start, -1, 0.0, start_state, {}});
    std::vector<signed char> goal_vis{-1}; // -1 unknown, 0 blocked, 1 clear

    int goal_parent = -1;
    double goal_cost = inf;
    EdgeResult goal_edge;

    auto ball_radius = [&](std::size_t count) {
        const double n = static_cast<double>(std::max<std::size_t>(count, 2));
        return config.neighbor_radius_scale * std::sqrt(std::log(n) / n) * diag;
    };
    auto goal_visible = [&](int i) {
        auto& flag = goal_vis[static_cast<std::size_t>(i)];
        if (flag < 0) flag = collision_free(nodes[static_cast<std::size_t>(i)].position,
                                            goal, discs)
                                 ? 1
                                 : 0;
        return flag == 1;
    };
    auto segment_edge = [&](int i, const Vec2& to) {
        const PlanNode& n = nodes[static_cast<std::size_t>(i)];
        return edge_cost(n.arrival, n.position, to, params, config.integrator_step);
    };

    for (int it = 0; it < config.n_samples; ++it) {
        // -------- sample --------
        Vec2 s;
        if (config.sampler == Sampler::uniform) {
            s.x = rng.uniform_in(0.0, world.extent.width);
            s.y = rng.uniform_in(0.0, world.extent.depth);
        } else {
            const double along = rng.uniform() * straight;
            const double across = rng.gaussian(0.0, sigma);
            s.x = std::clamp(start.x + along * axis.x + across * lateral.x, 0.0,
                             world.extent.width);
            s.y = std::clamp(start.y + along * axis.y + across * lateral.y, 0.0,
                             world.extent.depth);
        }

        auto reject = [&] {
            ++result.stats.rejected_samples;
            result.best_cost_series.push_back(goal_cost);
        };

        // -------- nearest + steer --------
        int nearest = 0;
        double nearest_d2 = inf;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double d2 = dist2(nodes[i].position, s);
            if (d2 < nearest_d2) {
                nearest_d2 = d2;
                nearest = static_cast<int>(i);
            }
        }
        const double nearest_d = std::sqrt(nearest_d2);
        Vec2 x_new = s;
        if (nearest_d > config.steer_step) {
            const double f = config.steer_step / nearest_d;
            const Vec2& np = nodes[static_cast<std::size_t>(nearest)].position;
            x_new = {np.x + (s.x - np.x) * f, np.y + (s.y - np.y) * f};
        }
        if (!collision_free(nodes[static_cast<std::size_t>(nearest)].position, x_new, discs)) {
            reject();
            continue;
        }

        // -------- neighbor ball --------
        const double r_ball = ball_radius(nodes.size() + 1);
        std::vector<int> ball;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (dist2(nodes[i].position, x_new) <= r_ball * r_ball)
                ball.push_back(static_cast<int>(i));
        if (std::find(ball.begin(), ball.end(), nearest) == ball.end())
            ball.push_back(nearest);

        // -------- choose parent --------
        int best = -1;
        double best_cost = inf;
        EdgeResult best_edge;
        for (int i : ball) {
            const EdgeResult e = segment_edge(i, x_new);
            const double c = nodes[static_cast<std::size_t>(i)].cost_to_come + e.doc;
            if (c < best_cost &&
                collision_free(nodes[static_cast<std::size_t>(i)].position, x_new, discs)) {
                best = i;
                best_cost = c;
                best_edge = e;
            }
        }
        if (best < 0) {
            reject();
            continue;
        }

        const int i_new = static_cast<int>(nodes.size());
        nodes.push_back({x_new, best, best_cost, best_edge.arrival, {}});
        nodes[static_cast<std::size_t>(best)].children.push_back(i_new);
        goal_vis.push_back(-1);

        // -------- rewire through the new node --------
        for (int i : ball) {
            if (i == best) continue; // its own parent cannot improve through it
            PlanNode& cand = nodes[static_cast<std::size_t>(i)];
            const EdgeResult e = edge_cost(nodes[static_cast<std::size_t>(i_new)].arrival,
                                           x_new, cand.position, params,
                                           config.integrator_step);
            const double via_new = best_cost + e.doc;
            if (via_new + kRewireEps < cand.cost_to_come &&
                collision_free(x_new, cand.position, discs)) {
                auto& siblings = nodes[static_cast<std::size_t>(cand.parent)].children;
                siblings.erase(std::find(siblings.begin(), siblings.end(), i));
                cand.parent = i_new;
                nodes[static_cast<std::size_t>(i_new)].children.push_back(i);
                cand.cost_to_come = via_new;
                cand.arrival = e.arrival;
                ++result.stats.rewires;

                // Re-propagate cost and arrival bookkeeping through the
                // subtree (strictly positive edges keep the tree acyclic).
                std::vector<int> stack(cand.children.begin(), cand.children.end());
                while (!stack.empty()) {
                    const int j = stack.back();
                    stack.pop_back();
                    PlanNode& child = nodes[static_cast<std::size_t>(j)];
                    const PlanNode& parent = nodes[static_cast<std::size_t>(child.parent)];
                    const EdgeResult ej = edge_cost(parent.arrival, parent.position,
                                                    child.position, params,
                                                    config.integrator_step);
                    child.cost_to_come = parent.cost_to_come + ej.doc;
                    child.arrival = ej.arrival;
                    stack.insert(stack.end(), child.children.begin(), child.children.end());
                }
            }
        }

        // -------- goal re-link --------
        // The goal is virtual: re-pick its parent among nodes within the
        // larger of the ball radius and the steer step, keeping the incumbent
        // as fallback so a found route is never lost to the shrinking ball.
        const double link_radius = std::max(r_ball, config.steer_step);
        const int prev_parent = goal_parent;
        goal_parent = -1;
        goal_cost = inf;
        if (prev_parent >= 0) {
            const EdgeResult e = segment_edge(prev_parent, goal);
            goal_parent = prev_parent;
            goal_cost = nodes[static_cast<std::size_t>(prev_parent)].cost_to_come + e.doc;
            goal_edge = e;
        }
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (static_cast<int>(i) == goal_parent) continue;
            if (dist2(nodes[i].position, goal) > link_radius * link_radius) continue;
            if (!goal_visible(static_cast<int>(i))) continue;
            const EdgeResult e = segment_edge(static_cast<int>(i), goal);
            const double c = nodes[i].cost_to_come + e.doc;
            if (c < goal_cost) {
                goal_parent = static_cast<int>(i);
                goal_cost = c;
                goal_edge = e;
            }
        }
        if (goal_parent >= 0 && goal_parent != prev_parent) ++result.stats.goal_relinks;
        result.best_cost_series.push_back(goal_cost);
    }

    result.stats.tree_size = static_cast<int>(nodes.size());
    if (goal_parent < 0) return result;

    result.found = true;
    for (int i = goal_parent; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
        result.path_node_ids.push_back(i);
    std::reverse(result.path_node_ids.begin(), result.path_node_ids.end());
    for (int id : result.path_node_ids)
        result.waypoints.push_back(nodes[static_cast<std::size_t>(id)].position);
    result.waypoints.push_back(goal);
    result.total_doc = goal_cost;
    result.final_state = goal_edge.arrival;
    result.duration = goal_edge.arrival.t - start_state.t;
    for (std::size_t i = 1; i < result.waypoints.size(); ++i)
        result.total_length += distance(result.waypoints[i - 1], result.waypoints[i]);
    return result;
}

} // namespace mindoc
