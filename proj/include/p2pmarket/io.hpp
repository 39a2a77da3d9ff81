#pragma once

#include <string>
#include <vector>

#include "p2pmarket/coalition.hpp"

namespace p2pmarket {

/// Fixed-point decimal text, locale-independent ("nan" for non-finite).
std::string format_fixed(double value, int decimals = 6);

std::vector<std::string> split_csv_line(const std::string& line);

/// Traffic matrix file: a "to_isp_1..m" header, one row of m volumes per
/// source ISP, then a final row labelled "server" with the server-fed
/// volume per ISP.
PcpTraffic read_traffic_csv(const std::string& path);
void write_traffic_csv(const std::string& path, const PcpTraffic& traffic);

} // namespace p2pmarket
