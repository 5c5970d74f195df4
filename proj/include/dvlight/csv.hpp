#ifndef DVLIGHT_CSV_HPP
#define DVLIGHT_CSV_HPP

#include <string>
#include <vector>

namespace dvlight::csv {

// Fixed "%.12g" float formatting so identical inputs give byte-identical
// files regardless of locale or stream state.
std::string format_double(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
};

std::string render(const Table& t);
void write_file(const std::string& path, const Table& t);

// Two-column numeric CSV (header line skipped); used for S eta tables.
std::vector<std::pair<double, double>> read_two_columns(const std::string& path);

} // namespace dvlight::csv

#endif
