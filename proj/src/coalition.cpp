#include "p2pmarket/coalition.hpp"

#include <cmath>
#include <numeric>

namespace p2pmarket {

namespace {

void check_nonnegative(double x, const char* what) {
    if (!(x >= 0.0))
        throw Error(ErrorCode::invalid_argument,
                    std::string(what) + " must be nonnegative");
}

} // namespace

PcpTraffic::PcpTraffic(std::vector<std::vector<double>> user_to_user_,
                       std::vector<double> server_to_user_)
    : user_to_user(std::move(user_to_user_)),
      server_to_user(std::move(server_to_user_)) {
    std::size_t m = server_to_user.size();
    if (user_to_user.size() != m)
        throw Error(ErrorCode::dimension_mismatch,
                    "traffic matrix row count must equal the ISP count");
    for (const auto& row : user_to_user) {
        if (row.size() != m)
            throw Error(ErrorCode::dimension_mismatch,
                        "traffic matrix must be square");
        for (double x : row)
            check_nonnegative(x, "traffic volume");
    }
    for (double x : server_to_user)
        check_nonnegative(x, "server traffic volume");
}

double PcpTraffic::total() const noexcept {
    double sum = 0.0;
    for (const auto& row : user_to_user)
        for (double x : row)
            sum += x;
    for (double x : server_to_user)
        sum += x;
    return sum;
}

WeightResult pcp_weights(const std::vector<PcpTraffic>& traffic,
                         double v_p2p) {
    if (!(v_p2p > 0.0))
        throw Error(ErrorCode::zero_volume, "v_p2p must be positive");
    if (traffic.empty())
        throw Error(ErrorCode::invalid_argument, "no PCP traffic given");

    WeightResult result;
    double grand_total = 0.0;
    for (const auto& t : traffic) {
        double total = t.total();
        grand_total += total;
        result.weights.push_back(total / v_p2p);
    }
    if (std::abs(grand_total - v_p2p) > 1e-3 * v_p2p)
        result.warnings.push_back(
            "traffic mismatch: matrices sum to " + std::to_string(grand_total) +
            " but v_p2p is " + std::to_string(v_p2p));
    return result;
}

PcpTraffic aggregate(const std::vector<PcpTraffic>& traffic) {
    if (traffic.empty())
        throw Error(ErrorCode::invalid_argument, "no PCP traffic given");
    std::size_t m = traffic.front().isp_count();
    PcpTraffic sum(std::vector<std::vector<double>>(m, std::vector<double>(m, 0.0)),
                   std::vector<double>(m, 0.0));
    for (const auto& t : traffic) {
        if (t.isp_count() != m)
            throw Error(ErrorCode::dimension_mismatch,
                        "PCP matrices disagree on the ISP count");
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k)
                sum.user_to_user[j][k] += t.user_to_user[j][k];
            sum.server_to_user[j] += t.server_to_user[j];
        }
    }
    return sum;
}

double isp_p2p_volume(const PcpTraffic& aggregated, std::size_t l) {
    std::size_t m = aggregated.isp_count();
    if (l >= m)
        throw Error(ErrorCode::invalid_argument, "ISP index out of range");
    double volume = aggregated.server_to_user[l];
    for (std::size_t k = 0; k < m; ++k)
        volume += aggregated.user_to_user[l][k] + aggregated.user_to_user[k][l];
    return volume;
}

WeightResult isp_weights(const std::vector<double>& p2p_volumes,
                         const std::vector<IspUserSide>& sides,
                         const MarketParameters& params,
                         const TrafficProfile& profile, double v_p2p,
                         double v_s0) {
    if (p2p_volumes.size() != sides.size())
        throw Error(ErrorCode::dimension_mismatch,
                    "per-ISP volume and user-side vectors disagree");
    double denominator = v_p2p * (2.0 - profile.beta) - v_s0 * profile.alpha;
    if (!(denominator > 0.0))
        throw Error(ErrorCode::zero_volume,
                    "free-riding denominator must be positive");

    WeightResult result;
    double balance = 0.0;
    double numerator_sum = 0.0;
    for (std::size_t l = 0; l < sides.size(); ++l) {
        double v_l = sides[l].background_volume + p2p_volumes[l];
        double numerator = v_l - sides[l].flat_bandwidth * params.xi_user;
        if (numerator < -1e-9 * std::max(1.0, v_l))
            throw Error(ErrorCode::negative_free_riding,
                        "ISP " + std::to_string(l + 1) +
                            " reports negative free-riding volume (" +
                            std::to_string(numerator) + ")");
        numerator = std::max(numerator, 0.0);
        numerator_sum += numerator;
        result.weights.push_back(numerator / denominator);
        balance += sides[l].flat_bandwidth * params.xi_user -
                   sides[l].background_volume;
    }
    double expected = v_s0 * profile.alpha;
    if (std::abs(balance - expected) > 1e-3 * std::max(1.0, std::abs(expected)))
        result.warnings.push_back(
            "inconsistent background traffic: flat bandwidth minus "
            "background sums to " + std::to_string(balance) + ", expected " +
            std::to_string(expected));

    // the paper's denominator equals the numerator sum when the balance
    // holds; normalize so the shares always sum to one
    if (numerator_sum > 0.0)
        for (double& w : result.weights)
            w *= denominator / numerator_sum;
    return result;
}

std::vector<PcpTraffic> synthesize_uniform_traffic(
    const std::vector<double>& user_counts,
    const std::vector<double>& per_user_usage, double beta) {
    if (user_counts.empty() || per_user_usage.empty())
        throw Error(ErrorCode::invalid_argument,
                    "synthesis needs at least one ISP and one PCP");
    if (!(beta > 0.0) || !(beta <= 1.0))
        throw Error(ErrorCode::invalid_argument, "beta must lie in (0, 1]");
    double population = 0.0;
    for (double n : user_counts) {
        if (!(n > 0.0))
            throw Error(ErrorCode::invalid_argument,
                        "user counts must be positive");
        population += n;
    }

    std::size_t m = user_counts.size();
    std::vector<PcpTraffic> traffic;
    for (double sigma : per_user_usage) {
        check_nonnegative(sigma, "per-user usage");
        std::vector<std::vector<double>> t(m, std::vector<double>(m, 0.0));
        std::vector<double> server(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k)
                t[j][k] = sigma * (1.0 - beta) * user_counts[k] *
                          user_counts[j] / population;
            server[j] = sigma * user_counts[j] * beta;
        }
        traffic.emplace_back(std::move(t), std::move(server));
    }
    return traffic;
}

namespace {

std::vector<double> normalized(const std::vector<double>& weights,
                               const char* name) {
    double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-3)
        throw Error(ErrorCode::weight_sum,
                    std::string(name) + " weights sum to " +
                        std::to_string(sum) + ", expected 1");
    std::vector<double> out = weights;
    for (double& w : out)
        w /= sum;
    return out;
}

} // namespace

CoalitionLedger distribute(double transfer_total,
                           const std::vector<double>& phi,
                           const std::vector<double>& psi) {
    CoalitionLedger ledger;
    ledger.phi = normalized(phi, "PCP");
    ledger.psi = normalized(psi, "ISP");
    for (double w : ledger.phi)
        ledger.pcp_payments.push_back(transfer_total * w);
    for (double w : ledger.psi)
        ledger.isp_receipts.push_back(transfer_total * w);
    return ledger;
}

std::vector<IspUserSide> proportional_sides(const std::vector<double>& ratio,
                                            double b_user_total,
                                            double v_cs_total) {
    double sum = std::accumulate(ratio.begin(), ratio.end(), 0.0);
    if (!(sum > 0.0))
        throw Error(ErrorCode::invalid_argument,
                    "side ratio must have a positive sum");
    std::vector<IspUserSide> sides;
    for (double r : ratio) {
        check_nonnegative(r, "side ratio entry");
        sides.push_back({b_user_total * r / sum, v_cs_total * r / sum});
    }
    return sides;
}

} // namespace p2pmarket
