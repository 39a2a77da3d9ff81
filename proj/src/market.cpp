#include "p2pmarket/market.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace p2pmarket {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid argument";
        case ErrorCode::capacity_exceeded: return "capacity exceeded";
        case ErrorCode::no_sign_change: return "no sign change";
        case ErrorCode::max_iterations: return "max iterations";
        case ErrorCode::no_equilibrium_root: return "no equilibrium root";
        case ErrorCode::second_order_failed: return "second-order condition failed";
        case ErrorCode::negative_price: return "negative price";
        case ErrorCode::negative_surplus: return "negative surplus";
        case ErrorCode::inconsistent_pairs: return "inconsistent pairs";
        case ErrorCode::traffic_mismatch: return "traffic mismatch";
        case ErrorCode::background_mismatch: return "inconsistent background traffic";
        case ErrorCode::negative_free_riding: return "negative free-riding volume";
        case ErrorCode::weight_sum: return "weight-sum violation";
        case ErrorCode::zero_volume: return "zero volume";
        case ErrorCode::dimension_mismatch: return "dimension mismatch";
        case ErrorCode::non_finite: return "non-finite evaluation";
        case ErrorCode::scenario: return "scenario error";
    }
    return "unknown";
}

MarketParameters::MarketParameters(double xi_cp_, double xi_user_, double b_isp_)
    : xi_cp(xi_cp_), xi_user(xi_user_), b_isp(b_isp_) {
    if (!(xi_user > 0.0) || !(xi_user <= xi_cp) || !(xi_cp <= 1.0))
        throw Error(ErrorCode::invalid_argument,
                    "usage ratios must satisfy 0 < xi_user <= xi_cp <= 1");
    if (!(b_isp > 0.0))
        throw Error(ErrorCode::invalid_argument, "b_isp must be positive");
}

TrafficProfile::TrafficProfile(double alpha_, double beta_)
    : alpha(alpha_), beta(beta_) {
    if (!(alpha >= 0.0) || !(alpha <= 1.0))
        throw Error(ErrorCode::invalid_argument, "alpha must lie in [0, 1]");
    if (!(beta > 0.0) || !(beta <= 1.0))
        throw Error(ErrorCode::invalid_argument, "beta must lie in (0, 1]");
}

double AccelerationModel::factor(const TrafficProfile& profile) const {
    if (beta0 == beta1)
        throw Error(ErrorCode::invalid_argument, "acceleration anchors coincide");
    double slope = (a0 - a1) / (beta0 - beta1);
    return a1 + slope * (profile.beta - beta1);
}

double acceleration_factor(const TrafficProfile& profile,
                           const AccelerationModel& model) {
    return model.factor(profile);
}

ScalarFn finite_difference(ScalarFn f) {
    return [f = std::move(f)](double x) {
        double h = 1e-6 * std::max(1.0, std::abs(x));
        return (f(x + h) - f(x - h)) / (2.0 * h);
    };
}

namespace {

// Bisection inverse for a strictly decreasing map on (0, hi).
ScalarFn bisection_inverse(ScalarFn f, double hi) {
    return [f = std::move(f), hi](double y) {
        double lo = 0.0, up = hi;
        double flo = f(lo), fup = f(up);
        if (!(y <= flo && y >= fup))
            throw Error(ErrorCode::invalid_argument,
                        "marginal experience inverse: value out of range");
        for (int i = 0; i < 200 && up - lo > 1e-13 * std::max(1.0, up); ++i) {
            double mid = 0.5 * (lo + up);
            if (f(mid) >= y)
                lo = mid;
            else
                up = mid;
        }
        return 0.5 * (lo + up);
    };
}

} // namespace

FunctionFamily::FunctionFamily(Spec spec)
    : spec_(std::move(spec)), capacity_(spec_.capacity) {
    if (!(capacity_ > 0.0))
        throw Error(ErrorCode::invalid_argument, "family capacity must be positive");
}

FunctionFamily FunctionFamily::from_spec(Spec spec) {
    if (!spec.content_cost || !spec.isp_cost || !spec.ad_revenue ||
        !spec.experience)
        throw Error(ErrorCode::invalid_argument,
                    "family requires the four base functions");
    if (!spec.marginal_experience)
        spec.marginal_experience = finite_difference(spec.experience);
    if (!spec.content_cost_d1) spec.content_cost_d1 = finite_difference(spec.content_cost);
    if (!spec.content_cost_d2) spec.content_cost_d2 = finite_difference(spec.content_cost_d1);
    if (!spec.isp_cost_d1) spec.isp_cost_d1 = finite_difference(spec.isp_cost);
    if (!spec.isp_cost_d2) spec.isp_cost_d2 = finite_difference(spec.isp_cost_d1);
    if (!spec.ad_revenue_d1) spec.ad_revenue_d1 = finite_difference(spec.ad_revenue);
    if (!spec.ad_revenue_d2) spec.ad_revenue_d2 = finite_difference(spec.ad_revenue_d1);
    if (!spec.marginal_experience_d1)
        spec.marginal_experience_d1 = finite_difference(spec.marginal_experience);
    if (!spec.marginal_experience_d2)
        spec.marginal_experience_d2 = finite_difference(spec.marginal_experience_d1);
    if (!spec.marginal_experience_inverse)
        spec.marginal_experience_inverse =
            bisection_inverse(spec.marginal_experience, spec.capacity * (1.0 - 1e-9));
    return FunctionFamily(std::move(spec));
}

FunctionFamily FunctionFamily::reference(double b_isp, const ReferenceParams& p) {
    if (!(b_isp > 0.0))
        throw Error(ErrorCode::invalid_argument, "b_isp must be positive");
    Spec s;
    s.capacity = b_isp;
    s.content_cost = [p](double v) { return p.k1 * std::log(v + 1.0) + p.k2; };
    s.content_cost_d1 = [p](double v) { return p.k1 / (v + 1.0); };
    s.content_cost_d2 = [p](double v) { double u = v + 1.0; return -p.k1 / (u * u); };
    s.isp_cost = [p, b_isp](double v) {
        return p.k1 * std::log(v + 1.0) +
               p.k3 * (1.0 / (b_isp - v) - 1.0 / b_isp) + p.k4;
    };
    s.isp_cost_d1 = [p, b_isp](double v) {
        double r = b_isp - v;
        return p.k1 / (v + 1.0) + p.k3 / (r * r);
    };
    s.isp_cost_d2 = [p, b_isp](double v) {
        double u = v + 1.0, r = b_isp - v;
        return -p.k1 / (u * u) + 2.0 * p.k3 / (r * r * r);
    };
    s.ad_revenue = [p](double v) { return p.k5 * std::log(v + 1.0); };
    s.ad_revenue_d1 = [p](double v) { return p.k5 / (v + 1.0); };
    s.ad_revenue_d2 = [p](double v) { double u = v + 1.0; return -p.k5 / (u * u); };
    s.experience = [p](double v) { return p.k5 * std::log(v + 1.0); };
    s.marginal_experience = [p](double v) { return p.k5 / (v + 1.0); };
    s.marginal_experience_d1 = [p](double v) { double u = v + 1.0; return -p.k5 / (u * u); };
    s.marginal_experience_d2 = [p](double v) { double u = v + 1.0; return 2.0 * p.k5 / (u * u * u); };
    s.marginal_experience_inverse = [p](double y) {
        if (!(y > 0.0))
            throw Error(ErrorCode::invalid_argument,
                        "marginal experience inverse: value must be positive");
        return p.k5 / y - 1.0;
    };
    return FunctionFamily(std::move(s));
}

void FunctionFamily::check_volume(double v) const {
    if (!(v >= 0.0))
        throw Error(ErrorCode::invalid_argument, "volume must be nonnegative");
    if (v >= max_volume())
        throw Error(ErrorCode::capacity_exceeded,
                    "volume " + std::to_string(v) + " at or beyond capacity " +
                        std::to_string(capacity_));
}

double FunctionFamily::isp_cost(double v) const {
    check_volume(v);
    return spec_.isp_cost(v);
}

double FunctionFamily::isp_cost_prime(double v) const {
    check_volume(v);
    return spec_.isp_cost_d1(v);
}

double FunctionFamily::isp_cost_second(double v) const {
    check_volume(v);
    return spec_.isp_cost_d2(v);
}

double accelerated_experience(const FunctionFamily& family, double v,
                              double v_cs, double a) {
    if (!(v_cs >= 0.0) || !(v >= v_cs))
        throw Error(ErrorCode::invalid_argument,
                    "accelerated experience requires v >= v_cs >= 0");
    return family.experience(a * (v - v_cs) + v_cs);
}

double alleviated_cost(const FunctionFamily& family, double v, double v_cs,
                       double beta) {
    if (!(v_cs >= 0.0) || !(v >= v_cs))
        throw Error(ErrorCode::invalid_argument,
                    "alleviated cost requires v >= v_cs >= 0");
    if (!(beta > 0.0) || !(beta <= 1.0))
        throw Error(ErrorCode::invalid_argument, "beta must lie in (0, 1]");
    return family.content_cost((v - v_cs) * beta + v_cs);
}

} // namespace p2pmarket
