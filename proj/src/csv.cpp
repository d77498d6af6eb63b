#include "qfall/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace qfall {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void Table::add_meta(const std::string& key, const std::string& value) {
    meta_.push_back("# " + key + " = " + value);
}

void Table::set_columns(const std::vector<std::string>& names) {
    header_.clear();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) header_ += ',';
        header_ += names[i];
    }
}

void Table::add_row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += format_double(values[i]);
    }
    rows_.push_back(std::move(line));
}

void Table::add_row_raw(const std::string& line) { rows_.push_back(line); }

std::string Table::to_string() const {
    std::string out;
    for (const auto& m : meta_) {
        out += m;
        out += '\n';
    }
    if (!header_.empty()) {
        out += header_;
        out += '\n';
    }
    for (const auto& r : rows_) {
        out += r;
        out += '\n';
    }
    return out;
}

void Table::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << to_string();
}

}  // namespace qfall
