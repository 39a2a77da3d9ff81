#include "p2pmarket/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace p2pmarket {

std::string format_fixed(double value, int decimals) {
    if (!std::isfinite(value))
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
    return buffer;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        std::size_t first = field.find_first_not_of(" \t\r");
        std::size_t last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos
                             ? std::string()
                             : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

namespace {

double parse_volume(const std::string& text, const std::string& path) {
    try {
        std::size_t used = 0;
        double value = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw Error(ErrorCode::scenario,
                    path + ": not a number: '" + text + "'");
    }
}

} // namespace

PcpTraffic read_traffic_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::scenario, "cannot open traffic file " + path);

    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.size() < 3)
        throw Error(ErrorCode::scenario,
                    path + ": expected a header, matrix rows and a server row");

    std::size_t m = rows.front().size();
    if (rows.size() != m + 2)
        throw Error(ErrorCode::scenario,
                    path + ": expected " + std::to_string(m) +
                        " matrix rows and one server row after the header");

    std::vector<std::vector<double>> matrix;
    for (std::size_t j = 1; j <= m; ++j) {
        if (rows[j].size() != m)
            throw Error(ErrorCode::scenario,
                        path + ": matrix row " + std::to_string(j) + " has " +
                            std::to_string(rows[j].size()) + " fields, expected " +
                            std::to_string(m));
        std::vector<double> row;
        for (const auto& f : rows[j])
            row.push_back(parse_volume(f, path));
        matrix.push_back(std::move(row));
    }

    const auto& server_row = rows.back();
    if (server_row.empty() || server_row.front() != "server" ||
        server_row.size() != m + 1)
        throw Error(ErrorCode::scenario,
                    path + ": last row must be 'server' followed by " +
                        std::to_string(m) + " volumes");
    std::vector<double> server;
    for (std::size_t k = 1; k <= m; ++k)
        server.push_back(parse_volume(server_row[k], path));

    return PcpTraffic(std::move(matrix), std::move(server));
}

void write_traffic_csv(const std::string& path, const PcpTraffic& traffic) {
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::scenario, "cannot write traffic file " + path);
    std::size_t m = traffic.isp_count();
    for (std::size_t k = 0; k < m; ++k)
        out << (k ? "," : "") << "to_isp_" << (k + 1);
    out << "\n";
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k)
            out << (k ? "," : "") << format_fixed(traffic.user_to_user[j][k]);
        out << "\n";
    }
    out << "server";
    for (std::size_t k = 0; k < m; ++k)
        out << "," << format_fixed(traffic.server_to_user[k]);
    out << "\n";
}

} // namespace p2pmarket
