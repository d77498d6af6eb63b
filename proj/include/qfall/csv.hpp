#pragma once

#include <string>
#include <vector>

namespace qfall {

/// Shortest round-trip decimal form of v, locale-independent.
std::string format_double(double v);

/// Plain-text table with '#'-prefixed metadata lines before the header row.
class Table {
  public:
    void add_meta(const std::string& key, const std::string& value);
    void set_columns(const std::vector<std::string>& names);
    void add_row(const std::vector<double>& values);
    void add_row_raw(const std::string& line);

    std::string to_string() const;
    void save(const std::string& path) const;

  private:
    std::vector<std::string> meta_;
    std::string header_;
    std::vector<std::string> rows_;
};

}  // namespace qfall
