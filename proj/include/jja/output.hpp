#pragma once

// Deterministic artifact writing: CSV/JSON with atomic replace (temp file +
// rename), 17-significant-digit floats, overwrite protection, and
// gnuplot-ready plot data emission.

#include "jja/config.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace jja {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// %.17g — guarantees binary round-trip of doubles.
std::string format_double(double value);

/// Existing target without `force` raises ConfigError; writes go through a
/// temp file in the same directory followed by an atomic rename.
void write_text_atomic(const std::string& path, const std::string& content, bool force);
void write_csv_atomic(const std::string& path, const Table& table, bool force);
void write_json_atomic(const std::string& path, const nlohmann::json& j, bool force);

struct PlotSpec {
    std::string x_column;
    std::vector<std::string> y_columns;
    std::string series_by; ///< optional column whose distinct values split data blocks
};

/// Writes `<base>.dat` (header-commented blocks, one per series value) and a
/// `<base>.gp` gnuplot script stub. Unknown columns raise ConfigError; an
/// empty table yields a valid empty data file.
void emit_plot_data(const std::string& base_path, const Table& table, const PlotSpec& spec,
                    bool force);

} // namespace jja
