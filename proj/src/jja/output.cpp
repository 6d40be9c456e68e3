#include "jja/output.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace jja {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content, bool force) {
    const fs::path target(path);
    if (fs::exists(target) && !force)
        throw ConfigError("refusing to overwrite existing file '" + path +
                          "' (pass --force to allow)");
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

void write_csv_atomic(const std::string& path, const Table& table, bool force) {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_double(row[c]);
        }
        out << '\n';
    }
    write_text_atomic(path, out.str(), force);
}

void write_json_atomic(const std::string& path, const nlohmann::json& j, bool force) {
    write_text_atomic(path, j.dump(2) + "\n", force);
}

namespace {

std::size_t column_index(const Table& table, const std::string& name) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), name);
    if (it == table.columns.end())
        throw ConfigError("plot spec references unknown column '" + name + "'");
    return static_cast<std::size_t>(it - table.columns.begin());
}

} // namespace

void emit_plot_data(const std::string& base_path, const Table& table, const PlotSpec& spec,
                    bool force) {
    const std::size_t xi = column_index(table, spec.x_column);
    std::vector<std::size_t> yi;
    for (const std::string& y : spec.y_columns) yi.push_back(column_index(table, y));
    const bool grouped = !spec.series_by.empty();
    const std::size_t si = grouped ? column_index(table, spec.series_by) : 0;

    // Distinct series values in first-appearance order.
    std::vector<double> series_values;
    if (grouped) {
        for (const auto& row : table.rows)
            if (std::find(series_values.begin(), series_values.end(), row[si]) ==
                series_values.end())
                series_values.push_back(row[si]);
    } else {
        series_values.push_back(0.0);
    }

    std::ostringstream dat;
    dat << "# " << spec.x_column;
    for (const std::string& y : spec.y_columns) dat << ' ' << y;
    dat << '\n';
    for (std::size_t b = 0; b < series_values.size(); ++b) {
        if (grouped)
            dat << "# " << spec.series_by << " = " << format_double(series_values[b]) << '\n';
        for (const auto& row : table.rows) {
            if (grouped && row[si] != series_values[b]) continue;
            dat << format_double(row[xi]);
            for (std::size_t y : yi) dat << ' ' << format_double(row[y]);
            dat << '\n';
        }
        if (b + 1 < series_values.size()) dat << "\n\n"; // gnuplot index separator
    }
    write_text_atomic(base_path + ".dat", dat.str(), force);

    std::ostringstream gp;
    const std::string dat_name = fs::path(base_path + ".dat").filename().string();
    gp << "set xlabel '" << spec.x_column << "'\n";
    gp << "set key top right\n";
    gp << "plot ";
    bool first = true;
    for (std::size_t b = 0; b < series_values.size(); ++b) {
        for (std::size_t y = 0; y < yi.size(); ++y) {
            if (!first) gp << ", \\\n     ";
            first = false;
            gp << "'" << dat_name << "' index " << b << " using 1:" << (y + 2)
               << " with linespoints title '" << spec.y_columns[y];
            if (grouped)
                gp << " (" << spec.series_by << "=" << format_double(series_values[b]) << ")";
            gp << "'";
        }
    }
    gp << '\n';
    write_text_atomic(base_path + ".gp", gp.str(), force);
}

} // namespace jja
