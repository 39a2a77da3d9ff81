#pragma once

#include <functional>
#include <optional>

#include "p2pmarket/errors.hpp"

namespace p2pmarket {

using ScalarFn = std::function<double(double)>;

/// Market-wide constants: bandwidth usage ratios of the two purchasing
/// sides and total traversing capacity of the ISP community.
///
/// The usage ratio converts billed bandwidth into carried volume
/// (v = b * xi), so 1/xi is the bandwidth bill per unit of volume.
struct MarketParameters {
    double xi_cp;   // CP-side usage ratio, in (0, 1]
    double xi_user; // user-side usage ratio, in (0, xi_cp]
    double b_isp;   // total traversing bandwidth, > 0

    MarketParameters(double xi_cp_, double xi_user_, double b_isp_);

    // Per-volume bandwidth price multipliers. c == d + e exactly.
    double d() const noexcept { return 1.0 / xi_user; }
    double e() const noexcept { return 1.0 / xi_cp; }
    double c() const noexcept { return d() + e(); }
};

/// Fraction of CP traffic served peer-assisted (alpha) and the share of
/// that content still fed by the provider's own servers (beta).
struct TrafficProfile {
    double alpha; // in [0, 1]
    double beta;  // in (0, 1]; servers never fully disappear

    TrafficProfile(double alpha_, double beta_);
};

/// Linear fit of the experience acceleration factor a(beta) through two
/// anchor points. The defaults fit (0.3, 4) and (1, 1), i.e.
/// a = 1 + (30/7)(1 - beta).
struct AccelerationModel {
    double beta0 = 0.3, a0 = 4.0;
    double beta1 = 1.0, a1 = 1.0;

    double factor(const TrafficProfile& profile) const;
};

/// Overridable constants of the built-in scalar function family.
struct ReferenceParams {
    double k1 = 1.0;   // log coefficient shared by both cost functions
    double k2 = 0.2;   // fixed CP cost
    double k3 = 100.0; // congestion coefficient of the ISP cost
    double k4 = 0.4;   // fixed ISP cost
    double k5 = 5.0;   // coefficient of ad revenue and user experience
};

/// The four scalar model functions with their derivatives, plus the
/// marginal experience o(v) = E'(v) and its inverse. All maps are pure;
/// a family is an immutable value safe to share across threads.
///
/// The ISP cost diverges at the capacity, so its accessors reject
/// volumes at or beyond capacity * (1 - 1e-9) with a defined error
/// instead of returning a non-finite number.
class FunctionFamily {
public:
    /// User-supplied pieces. Derivative and inverse slots may be left
    /// empty: missing derivatives fall back to central finite
    /// differences and a missing inverse falls back to bisection on the
    /// (strictly decreasing) marginal experience.
    struct Spec {
        double capacity = 0.0; // b_isp; domain of the ISP cost
        ScalarFn content_cost;                 // C_cp
        ScalarFn content_cost_d1, content_cost_d2;
        ScalarFn isp_cost;                     // C_isp
        ScalarFn isp_cost_d1, isp_cost_d2;
        ScalarFn ad_revenue;                   // F_ad
        ScalarFn ad_revenue_d1, ad_revenue_d2;
        ScalarFn experience;                   // E_user
        ScalarFn marginal_experience;          // o = E'
        ScalarFn marginal_experience_d1, marginal_experience_d2;
        ScalarFn marginal_experience_inverse;  // o^{-1}
    };

    static FunctionFamily reference(double b_isp, const ReferenceParams& p = {});
    static FunctionFamily from_spec(Spec spec);

    double capacity() const noexcept { return capacity_; }
    /// Largest volume the ISP cost accepts (just below the singularity).
    double max_volume() const noexcept { return capacity_ * (1.0 - 1e-9); }

    double content_cost(double v) const { return spec_.content_cost(v); }
    double content_cost_prime(double v) const { return spec_.content_cost_d1(v); }
    double content_cost_second(double v) const { return spec_.content_cost_d2(v); }

    double isp_cost(double v) const;
    double isp_cost_prime(double v) const;
    double isp_cost_second(double v) const;

    double ad_revenue(double v) const { return spec_.ad_revenue(v); }
    double ad_revenue_prime(double v) const { return spec_.ad_revenue_d1(v); }
    double ad_revenue_second(double v) const { return spec_.ad_revenue_d2(v); }

    double experience(double v) const { return spec_.experience(v); }
    double marginal_experience(double v) const { return spec_.marginal_experience(v); }
    double marginal_experience_prime(double v) const { return spec_.marginal_experience_d1(v); }
    double marginal_experience_second(double v) const { return spec_.marginal_experience_d2(v); }
    double marginal_experience_inverse(double y) const { return spec_.marginal_experience_inverse(y); }

private:
    explicit FunctionFamily(Spec spec);
    void check_volume(double v) const;

    Spec spec_;
    double capacity_;
};

/// Central finite-difference derivative of f, h = 1e-6 * max(1, |x|).
ScalarFn finite_difference(ScalarFn f);

/// Experience acceleration factor for a traffic profile.
/// a >= 1, with a == 1 exactly when beta == 1.
double acceleration_factor(const TrafficProfile& profile,
                           const AccelerationModel& model = {});

/// Peer-assisted experience: E(a * (v - v_cs) + v_cs).
/// Requires v >= v_cs >= 0; never below the plain experience for a >= 1.
double accelerated_experience(const FunctionFamily& family, double v,
                              double v_cs, double a);

/// Peer-alleviated content cost: C_cp((v - v_cs) * beta + v_cs).
/// Requires v >= v_cs >= 0 and beta in (0, 1].
double alleviated_cost(const FunctionFamily& family, double v, double v_cs,
                       double beta);

} // namespace p2pmarket
