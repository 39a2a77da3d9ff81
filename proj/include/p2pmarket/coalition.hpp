#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "p2pmarket/market.hpp"

namespace p2pmarket {

/// Measured traffic of one PCP across the member ISPs: user-to-user
/// volumes (row = source ISP, column = destination ISP) plus the
/// server-fed volume into each ISP.
struct PcpTraffic {
    std::vector<std::vector<double>> user_to_user;  // m x m, nonnegative
    std::vector<double> server_to_user;             // length m, nonnegative

    PcpTraffic() = default;
    PcpTraffic(std::vector<std::vector<double>> user_to_user_,
               std::vector<double> server_to_user_);

    std::size_t isp_count() const noexcept { return server_to_user.size(); }
    double total() const noexcept;
};

/// User side of one member ISP: flat-rate bandwidth sold and the
/// background client/server volume carried for those users.
struct IspUserSide {
    double flat_bandwidth = 0.0;     // b_l, > 0
    double background_volume = 0.0;  // client/server volume, >= 0
};

/// Weight vector plus any consistency warnings collected on the way.
struct WeightResult {
    std::vector<double> weights;
    std::vector<std::string> warnings;
};

/// Money flows of one settlement round: per-PCP payments into the pool
/// and per-ISP receipts out of it, both summing to the transfer.
struct CoalitionLedger {
    std::vector<double> phi;           // per-PCP volume shares
    std::vector<double> psi;           // per-ISP free-riding shares
    std::vector<double> pcp_payments;  // transfer * phi
    std::vector<double> isp_receipts;  // transfer * psi
    std::vector<std::string> warnings;
};

/// Share of the coalition's peer volume caused by each PCP. Attaches a
/// warning when the matrices disagree with v_p2p by more than 0.1%.
WeightResult pcp_weights(const std::vector<PcpTraffic>& traffic, double v_p2p);

/// Elementwise sum of the member matrices.
PcpTraffic aggregate(const std::vector<PcpTraffic>& traffic);

/// User-side peer volume inside ISP l: uploads (full row l), downloads
/// (full column l, so the intra-ISP diagonal counts on both sides) and
/// the server feed into l. Summed over l this gives v_p2p * (2 - beta).
double isp_p2p_volume(const PcpTraffic& aggregated, std::size_t l);

/// Share of the free-riding volume carried by each ISP. Validates the
/// background-traffic balance (warning beyond 0.1%) and normalizes so
/// the shares sum to one.
WeightResult isp_weights(const std::vector<double>& p2p_volumes,
                         const std::vector<IspUserSide>& sides,
                         const MarketParameters& params,
                         const TrafficProfile& profile, double v_p2p,
                         double v_s0);

/// Traffic matrices implied by uniformly distributed content and random
/// peer selection: user j draws from user k in proportion to N_k.
std::vector<PcpTraffic> synthesize_uniform_traffic(
    const std::vector<double>& user_counts,
    const std::vector<double>& per_user_usage, double beta);

/// Split the transfer across both coalitions. Weight vectors must sum to
/// one within 0.1% and are renormalized, so the ledger is exact.
CoalitionLedger distribute(double transfer_total,
                           const std::vector<double>& phi,
                           const std::vector<double>& psi);

/// Member ISP sides splitting the system-wide user bandwidth and
/// background volume by the given ratio (need not be normalized).
std::vector<IspUserSide> proportional_sides(const std::vector<double>& ratio,
                                            double b_user_total,
                                            double v_cs_total);

} // namespace p2pmarket
