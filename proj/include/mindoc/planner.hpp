// Minimum-DOC route planning over a field of cylindrical obstacles:
// procedural city generation, altitude slicing into inflated discs, segment
// collision tests, cruise-cost edge evaluation, and an RRT* variant whose
// edge weights are direct operating cost rather than length.
#pragma once

#include "mindoc/optimizer.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mindoc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

/// A building: a vertical cylinder footed at ground level.
struct CylinderObstacle {
    Vec2 center;
    double radius = 0.0; ///< m
    double height = 0.0; ///< m above ground, margin included
};

/// Rectangular operating area [0, width] x [0, depth].
struct WorldExtent {
    double width = 0.0; ///< m
    double depth = 0.0; ///< m
};

/// An obstacle field plus the safety parameters routes must respect.
struct World {
    WorldExtent extent;
    std::vector<CylinderObstacle> obstacles;
    double buffer = 10.0;            ///< lateral inflation applied to every cylinder, m
    double restricted_margin = 150.0; ///< vertical restricted-airspace allowance, m
    std::uint64_t seed = 0;          ///< seed the field was generated from (0 = external)

    /// @throws DomainError on non-positive extent or negative safety margins
    void validate() const;
};

/// @brief Generate a random city: n cylinders with centers uniform over the
/// extent, radii and heights uniform over their ranges. Heights are drawn
/// over height_range directly (the range already accounts for the restricted
/// margin above the physical rooftop). A cylinder landing within
/// radius + buffer + restricted_margin of a protected point (start/goal) is
/// redrawn so departure and arrival stay flyable.
///
/// Draw order per building is center.x, center.y, radius, height; a redraw
/// consumes a fresh quadruple, so fields are reproducible from the seed.
///
/// @throws DomainError   on invalid ranges
/// @throws ResourceError if clearance rejections exceed 1000 draws per building
World generate_city(std::uint64_t seed, int n, const WorldExtent& extent,
                    std::pair<double, double> radius_range,
                    std::pair<double, double> height_range, double restricted_margin,
                    double buffer, const std::vector<Vec2>& protected_points = {});

/// A cylinder sliced at cruise altitude and inflated by the buffer.
struct Disc {
    Vec2 center;
    double radius = 0.0; ///< m, inflation included
};

/// Discs for every obstacle tall enough to matter at the given altitude
/// (height >= altitude; equality blocks).
std::vector<Disc> active_obstacles(const World& world, double cruise_altitude);

/// True when the segment a-b keeps at least the inflated radius from every
/// disc center (touching tangentially counts as free).
bool collision_free(const Vec2& a, const Vec2& b, const std::vector<Disc>& discs);

/// Along-route bookkeeping carried from node to node.
struct ArrivalState {
    double t = 0.0;      ///< s since departure
    double weight = 0.0; ///< N
    double charge = 0.0; ///< C
};

/// Cost and arrival bookkeeping of one flown edge.
struct EdgeResult {
    double doc = 0.0; ///< USD
    ArrivalState arrival;
};

/// @brief DOC of cruising the segment p1 -> p2 starting from a given state.
///
/// Pure-electric powertrains fly the closed-form optimal speed, constant
/// along the edge (weight never changes), so the edge integrates in closed
/// form. Hybrid powertrains integrate the cruise dynamics over the segment
/// with the weight costate held at zero: route edges are repriceable in
/// isolation, so the greedy (terminal-costate) speed is the right per-edge
/// policy and the costate drift over km-scale edges is negligible.
EdgeResult edge_cost(const ArrivalState& from, const Vec2& p1, const Vec2& p2,
                     const CruiseParams& params, double step = 1.0);

/// One vertex of the search tree.
struct PlanNode {
    Vec2 position;
    int parent = -1;
    double cost_to_come = 0.0; ///< USD from the start
    ArrivalState arrival;
    std::vector<int> children;
};

enum class Sampler {
    uniform,  ///< uniform over the extent
    gaussian, ///< uniform along the start-goal axis, normal across it
};

/// Planner knobs. Defaults reproduce the reference scenario budget: 250
/// samples with a neighbor ball shrinking to 10% of the extent diagonal by
/// the last iteration.
struct PlannerConfig {
    int n_samples = 250;
    double steer_step = 800.0;     ///< m, max extension per iteration
    double neighbor_radius_scale = 0.6728881798538903; ///< r_n = scale sqrt(ln n / n) diag
    double goal_tolerance = 150.0; ///< m, required terminal proximity
    Sampler sampler = Sampler::gaussian;
    std::optional<double> sigma_lateral; ///< m; defaults to extent depth / 4
    std::uint64_t rng_seed = 1;
    double integrator_step = 1.0; ///< s, for hybrid edge integration

    void validate() const;
};

struct PlanStats {
    int tree_size = 0;        ///< accepted nodes, start included
    int rejected_samples = 0; ///< iterations that added no node
    int rewires = 0;          ///< parent swaps among existing nodes
    int goal_relinks = 0;     ///< times the goal picked a new parent
};

/// Everything a planning run produces.
struct PlanResult {
    bool found = false;
    std::vector<int> path_node_ids;  ///< start..last tree node (goal is virtual)
    std::vector<Vec2> waypoints;     ///< start..goal positions
    double total_doc = 0.0;          ///< USD
    double total_length = 0.0;       ///< m
    double duration = 0.0;           ///< s
    ArrivalState final_state;        ///< at the goal
    std::vector<double> best_cost_series; ///< per-iteration incumbent (inf until found)
    std::vector<PlanNode> tree;
    PlanStats stats;
};

/// @brief Plan a minimum-DOC route from start to goal with RRT*.
///
/// Nearest neighbors are Euclidean; extensions are capped at steer_step;
/// parents are chosen and rewired inside the shrinking neighbor ball using
/// DOC edge costs, with arrival states re-propagated through descendants on
/// every rewire. The goal is a virtual node: each iteration re-picks its
/// parent as the cheapest collision-free tree node within
/// max(ball radius, steer_step), caching per-node goal visibility.
///
/// @param start_state bookkeeping at departure (weight and charge required)
/// @throws DomainError when start or goal is inside an active obstacle,
///         outside the extent, or coincident
PlanResult plan(const World& world, const Vec2& start, const Vec2& goal,
                const ArrivalState& start_state, const CruiseParams& params,
                const PlannerConfig& config = {});

} // namespace mindoc
