#include "dvlight/csv.hpp"
#include "dvlight/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dvlight::csv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void Table::add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

std::string render(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) out += ',';
        out += t.header[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const Table& t) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw config_error("cannot open for writing: " + path);
    f << render(t);
    if (!f)
        throw config_error("write failed: " + path);
}

std::vector<std::pair<double, double>> read_two_columns(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw config_error("cannot open: " + path);
    std::vector<std::pair<double, double>> out;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (line.empty())
            continue;
        if (first) { // header
            first = false;
            continue;
        }
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
            throw config_error("malformed CSV line in " + path + ": " + line);
        try {
            out.emplace_back(std::stod(a), std::stod(b));
        } catch (const std::exception&) {
            throw config_error("non-numeric CSV cell in " + path + ": " + line);
        }
    }
    if (out.empty())
        throw config_error("no data rows in " + path);
    return out;
}

} // namespace dvlight::csv
