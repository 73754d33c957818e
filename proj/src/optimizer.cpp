#include "mindoc/optimizer.hpp"

#include "mindoc/errors.hpp"
#include "mindoc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace mindoc {

namespace {

constexpr long kMaxSteps = 10'000'000;  // integrator step budget
constexpr int kMaxSecantIters = 60;     // shooting refinement budget

} // namespace

CruiseParams CruiseParams::make(const Airframe& airframe, const Powertrain& powertrain,
                                const Atmosphere& atmosphere, const CostInputs& costs,
                                const ConversionFactors& conv) {
    airframe.validate();
    powertrain.validate();
    atmosphere.validate();
    costs.validate();
    if (conv.kappa_i <= 0.0) throw DomainError("conversions: kappa_i must be > 0");
    if (conv.kappa_f < 0.0) throw DomainError("conversions: kappa_f must be >= 0");
    if (conv.gravity <= 0.0) throw DomainError("conversions: gravity must be > 0");
    CruiseParams p;
    p.airframe = airframe;
    p.powertrain = powertrain;
    p.atmosphere = atmosphere;
    p.costs = costs;
    p.conv = conv;
    p.tradeoffs = derive_tradeoffs(costs);
    return p;
}

double CruiseParams::costate_scale() const {
    const double primary = std::abs((1.0 - tradeoffs.c_e) * conv.kappa_f);
    if (primary > 0.0) return primary;
    if (conv.kappa_f > 0.0) return conv.kappa_f;
    return conv.kappa_i;
}

double jbar(double c_e, double kappa_f, double costate) {
    return (1.0 - c_e) * kappa_f - costate;
}

std::array<double, 6> quintic_coefficients(double weight, double jbar_value,
                                           const CruiseParams& params) {
    const double rho = params.atmosphere.density;
    const double s = params.airframe.wing_area;
    const double cd0 = params.airframe.cd0;
    const double cd2 = params.airframe.cd2;
    const double beta = params.powertrain.beta;
    const double eta = params.powertrain.efficiency;
    const double c_e = params.tradeoffs.c_e;
    const double kappa_i = params.conv.kappa_i;
    const double tsfc_w = params.tsfc_weight();
    const double rho_s_sq = rho * rho * s * s;
    const double w_sq = weight * weight;

    std::array<double, 6> a{};
    a[0] = (1.0 + c_e) * kappa_i * beta * rho_s_sq * cd0 / eta;
    a[1] = jbar_value * (1.0 - beta) * tsfc_w * rho_s_sq * cd0 / 2.0;
    a[2] = 0.0;
    a[3] = -params.tradeoffs.time_weight() * rho * s;
    a[4] = -4.0 * (1.0 + c_e) * kappa_i * beta * cd2 * w_sq / eta;
    a[5] = -6.0 * jbar_value * (1.0 - beta) * tsfc_w * cd2 * w_sq;
    return a;
}

double electric_quartic_root(double weight, const CruiseParams& params) {
    const double rho = params.atmosphere.density;
    const double s = params.airframe.wing_area;
    const double common = (1.0 + params.tradeoffs.c_e) * params.conv.kappa_i *
                          params.powertrain.beta / params.powertrain.efficiency;
    const double a = common * rho * rho * s * s * params.airframe.cd0;
    const double b = params.tradeoffs.time_weight() * rho * s;
    const double c = 4.0 * common * params.airframe.cd2 * weight * weight;
    return positive_root_sparse_quartic(a, b, c);
}

AirspeedSolution optimal_airspeed(double weight, double costate, const CruiseParams& params) {
    if (weight <= 0.0) throw DomainError("optimal_airspeed: weight must be > 0");
    if (params.powertrain.beta == 1.0)
        return {electric_quartic_root(weight, params), false};

    const double j = jbar(params.tradeoffs.c_e, params.conv.kappa_f, costate);
    const auto coeffs = quintic_coefficients(weight, j, params);

    // Substituting v = v_md u keeps the companion matrix well conditioned:
    // the interesting roots land near u ~ 1 instead of v ~ 1e2.
    const double v_md = min_drag_speed(params.airframe, params.atmosphere.density, weight);
    std::vector<double> scaled(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        scaled[i] = coeffs[i] * std::pow(v_md, static_cast<double>(coeffs.size() - 1 - i));

    const std::vector<double> roots = positive_real_roots(scaled);
    if (roots.empty())
        throw RootError("optimal_airspeed: optimality condition has no positive root");
    if (roots.size() == 1) return {roots[0] * v_md, false};

    // Several stationary speeds (possible once jbar < 0): pick the cheapest
    // per meter flown.
    double best_v = 0.0;
    double best_per_meter = std::numeric_limits<double>::infinity();
    for (double u : roots) {
        const double v = u * v_md;
        const double d = drag(params.airframe, params.atmosphere.density, weight, v);
        const double per_meter =
            doc_rate(v, d, params.powertrain, params.costs, params.conv) / v;
        if (per_meter < best_per_meter) {
            best_per_meter = per_meter;
            best_v = v;
        }
    }
    return {best_v, true};
}

double costate_rate(double weight, double airspeed, double costate,
                    const CruiseParams& params) {
    const double rho = params.atmosphere.density;
    const double s = params.airframe.wing_area;
    const double cd2 = params.airframe.cd2;
    const double beta = params.powertrain.beta;
    const double j = jbar(params.tradeoffs.c_e, params.conv.kappa_f, costate);
    const double electric_term = -4.0 * (1.0 + params.tradeoffs.c_e) * params.conv.kappa_i *
                                 beta * cd2 * weight /
                                 (params.powertrain.efficiency * rho * s * airspeed);
    const double fuel_term = -j * (1.0 - beta) * params.tsfc_weight() * 4.0 * cd2 * weight /
                             (rho * s * airspeed * airspeed);
    return electric_term + fuel_term;
}

StateRates state_rates(const CruiseState& state, double airspeed, const CruiseParams& params) {
    const double d = drag(params.airframe, params.atmosphere.density, state.weight, airspeed);
    const double beta = params.powertrain.beta;
    StateRates rates;
    rates.r = airspeed;
    rates.weight = -params.tsfc_weight() * (1.0 - beta) * d;
    rates.charge = beta > 0.0
                       ? -beta * d * airspeed /
                             (params.powertrain.efficiency * params.powertrain.supply_voltage)
                       : 0.0;
    // Constant weight (pure electric) pins the costate: the free-final-weight
    // condition then holds identically instead of through shooting.
    rates.costate =
        beta < 1.0 ? costate_rate(state.weight, airspeed, state.costate, params) : 0.0;
    return rates;
}

namespace {

struct StagePoint {
    StateRates rates;
    double airspeed = 0.0;
    bool multiple_roots = false;
    bool jbar_negative = false;
};

StagePoint stage_at(const CruiseState& state, const CruiseParams& params) {
    StagePoint p;
    const AirspeedSolution sol = optimal_airspeed(state.weight, state.costate, params);
    p.airspeed = sol.airspeed;
    p.multiple_roots = sol.multiple_roots;
    p.jbar_negative =
        jbar(params.tradeoffs.c_e, params.conv.kappa_f, state.costate) < 0.0;
    p.rates = state_rates(state, sol.airspeed, params);
    return p;
}

CruiseState offset(const CruiseState& s, const StateRates& k, double h) {
    return {s.t + h, s.r + h * k.r, s.weight + h * k.weight, s.charge + h * k.charge,
            s.costate + h * k.costate};
}

void guard_state(const CruiseState& s, const CruiseParams& params) {
    if (s.weight < params.airframe.empty_weight)
        throw DomainError("cruise: weight fell below empty weight (fuel exhausted); "
                          "the requested range is infeasible");
    if (s.charge < 0.0)
        throw DomainError("cruise: battery charge went negative; "
                          "the requested range is infeasible");
}

} // namespace

CruiseProfile integrate_cruise(const CruiseState& initial, double target_range,
                               const CruiseParams& params, double step, bool hold_costate) {
    if (step <= 0.0) throw DomainError("integrate_cruise: step must be > 0");
    if (!(target_range > initial.r))
        throw DomainError("integrate_cruise: target range must lie ahead of the start");
    guard_state(initial, params);

    CruiseProfile profile;
    profile.costate_initial = initial.costate;

    CruiseState s = initial;
    auto stage = [&](const CruiseState& at) {
        StagePoint p = stage_at(at, params);
        if (hold_costate) p.rates.costate = 0.0;
        return p;
    };
    auto note = [&](const StagePoint& p) {
        profile.root_flagged = profile.root_flagged || p.multiple_roots;
        profile.jbar_went_negative = profile.jbar_went_negative || p.jbar_negative;
    };
    auto push_sample = [&](const CruiseState& at, double airspeed) {
        const double d = drag(params.airframe, params.atmosphere.density, at.weight, airspeed);
        profile.samples.push_back(
            {at.t, at.r, airspeed, at.weight, at.charge, at.costate,
             doc_rate(airspeed, d, params.powertrain, params.costs, params.conv)});
    };

    for (long n = 0; n < kMaxSteps; ++n) {
        const StagePoint k1 = stage(s);
        if (profile.samples.empty()) push_sample(s, k1.airspeed);

        const StagePoint k2 = stage(offset(s, k1.rates, 0.5 * step));
        const StagePoint k3 = stage(offset(s, k2.rates, 0.5 * step));
        const StagePoint k4 = stage(offset(s, k3.rates, step));
        note(k1); note(k2); note(k3); note(k4);

        const double sixth = step / 6.0;
        const double dr = sixth * (k1.rates.r + 2.0 * k2.rates.r + 2.0 * k3.rates.r + k4.rates.r);
        const double dw = sixth * (k1.rates.weight + 2.0 * k2.rates.weight +
                                   2.0 * k3.rates.weight + k4.rates.weight);
        const double dq = sixth * (k1.rates.charge + 2.0 * k2.rates.charge +
                                   2.0 * k3.rates.charge + k4.rates.charge);
        const double dj = sixth * (k1.rates.costate + 2.0 * k2.rates.costate +
                                   2.0 * k3.rates.costate + k4.rates.costate);
        if (!(dr > 0.0))
            throw ResourceError("integrate_cruise: no forward progress in a step");

        if (s.r + dr >= target_range) {
            // The last fraction of a step: interpolate every state linearly in
            // position so the final sample lands exactly on the target.
            const double theta = (target_range - s.r) / dr;
            CruiseState f{s.t + theta * step, target_range, s.weight + theta * dw,
                          s.charge + theta * dq, s.costate + theta * dj};
            guard_state(f, params);
            profile.charge_integral -= theta * dq;
            profile.fuel_weight_integral -= theta * dw;
            const StagePoint pf = stage(f);
            note(pf);
            push_sample(f, pf.airspeed);
            s = f;
            break;
        }

        s = offset(s, StateRates{dr / step, dw / step, dq / step, dj / step}, step);
        guard_state(s, params);
        profile.charge_integral -= dq;
        profile.fuel_weight_integral -= dw;
        const StagePoint next = stage(s);
        push_sample(s, next.airspeed);

        if (n + 1 == kMaxSteps)
            throw ResourceError("integrate_cruise: step budget exhausted before reaching "
                                "the target range");
    }

    profile.summary.duration = s.t - initial.t;
    profile.summary.fuel_mass = (initial.weight - s.weight) / params.conv.gravity;
    profile.summary.charge_spent_ah = (initial.charge - s.charge) / 3600.0;
    profile.summary.total_doc = doc_total(profile);
    profile.summary.hourly_doc =
        profile.summary.duration > 0.0
            ? profile.summary.total_doc / profile.summary.duration * 3600.0
            : 0.0;
    profile.summary.final_position = s.r;
    return profile;
}

CruiseProfile shoot(const CruiseBoundary& boundary, const CruiseParams& params,
                    double step, double tol, int scan_steps) {
    if (!(boundary.rf > boundary.r0))
        throw DomainError("shoot: target range must lie ahead of the start");

    if (params.powertrain.beta == 1.0) {
        CruiseProfile profile = integrate_cruise({0.0, boundary.r0, boundary.w0, boundary.q0, 0.0},
                                                 boundary.rf, params, step);
        profile.shoot_iterations = 1;
        return profile;
    }

    const double scale = params.costate_scale();
    const double tol_eff = tol > 0.0 ? tol : 1e-9 * scale;

    int evals = 0;
    auto residual = [&](double j0) {
        CruiseProfile p = integrate_cruise({0.0, boundary.r0, boundary.w0, boundary.q0, j0},
                                           boundary.rf, params, step);
        ++evals;
        return p;
    };
    auto finish = [&](CruiseProfile&& p) {
        p.shoot_iterations = evals;
        return std::move(p);
    };

    CruiseProfile at_zero = residual(0.0);
    const double res0 = at_zero.samples.back().costate;
    if (std::abs(res0) <= tol_eff) return finish(std::move(at_zero));

    // Bracket the sign change by walking candidate magnitudes toward the
    // costate scale, starting from the direction the zero-residual points to.
    const int depth = std::max(1, scan_steps / 2);
    double lo_j = 0.0, lo_res = res0;
    double hi_j = 0.0, hi_res = 0.0;
    CruiseProfile hi_profile;
    bool bracketed = false;
    const double first_dir = res0 < 0.0 ? 1.0 : -1.0;
    for (const double dir : {first_dir, -first_dir}) {
        lo_j = 0.0;
        lo_res = res0;
        for (int k = depth - 1; k >= 0; --k) {
            const double cand = dir * scale * std::ldexp(1.0, -k);
            CruiseProfile p = residual(cand);
            const double res = p.samples.back().costate;
            if (std::abs(res) <= tol_eff) return finish(std::move(p));
            if ((res < 0.0) != (lo_res < 0.0)) {
                hi_j = cand;
                hi_res = res;
                hi_profile = std::move(p);
                bracketed = true;
                break;
            }
            lo_j = cand;
            lo_res = res;
        }
        if (bracketed) break;
    }
    if (!bracketed)
        throw ShootError("shoot: no sign change of the final costate within the scanned "
                         "initial-costate range; boundary problem looks ill-posed");

    // Secant refinement inside the bracket, falling back to bisection when a
    // secant step escapes it.
    double a = lo_j, fa = lo_res;
    double b = hi_j, fb = hi_res;
    double x_prev = a, f_prev = fa;
    double x = b, fx = fb;
    CruiseProfile best = std::move(hi_profile);
    for (int it = 0; it < kMaxSecantIters; ++it) {
        if (std::abs(fx) <= tol_eff) return finish(std::move(best));

        double x_new;
        const double denom = fx - f_prev;
        if (denom != 0.0) {
            x_new = x - fx * (x - x_prev) / denom;
        } else {
            x_new = 0.5 * (a + b);
        }
        const double lo = std::min(a, b), hi = std::max(a, b);
        if (!std::isfinite(x_new) || x_new <= lo || x_new >= hi) x_new = 0.5 * (a + b);

        CruiseProfile p = residual(x_new);
        const double f_new = p.samples.back().costate;
        if ((f_new < 0.0) == (fa < 0.0)) {
            a = x_new;
            fa = f_new;
        } else {
            b = x_new;
            fb = f_new;
        }
        x_prev = x;
        f_prev = fx;
        x = x_new;
        fx = f_new;
        best = std::move(p);
    }
    if (std::abs(fx) <= tol_eff) return finish(std::move(best));
    throw ShootError("shoot: secant refinement did not reach the requested tolerance");
}

double doc_total(const CruiseProfile& profile) {
    double acc = 0.0;
    for (std::size_t i = 1; i < profile.samples.size(); ++i) {
        const auto& a = profile.samples[i - 1];
        const auto& b = profile.samples[i];
        acc += 0.5 * (a.doc_rate + b.doc_rate) * (b.t - a.t);
    }
    return acc;
}

double doc_recost_fuel_only(const CruiseProfile& profile, const CruiseParams& params,
                            double jet_tsfc, double jet_fuel_cost) {
    if (jet_tsfc <= 0.0) throw DomainError("recost: jet tsfc must be > 0");
    if (jet_fuel_cost < 0.0) throw DomainError("recost: jet fuel cost must be >= 0");
    if (params.conv.kappa_f <= 0.0)
        throw DomainError("recost: fuel conversion factor (heating value) is required");
    const double per_drag =
        jet_fuel_cost * params.conv.kappa_f * params.conv.gravity * jet_tsfc;
    double acc = 0.0;
    double prev_t = 0.0, prev_rate = 0.0;
    bool have_prev = false;
    for (const auto& sample : profile.samples) {
        const double d =
            drag(params.airframe, params.atmosphere.density, sample.weight, sample.airspeed);
        const double rate = per_drag * d;
        if (have_prev) acc += 0.5 * (prev_rate + rate) * (sample.t - prev_t);
        prev_t = sample.t;
        prev_rate = rate;
        have_prev = true;
    }
    return acc;
}

} // namespace mindoc
