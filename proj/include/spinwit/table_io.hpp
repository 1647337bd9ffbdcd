#pragma once

#include <string>
#include <vector>

namespace spinwit {

// Column header plus rows of already-rendered cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Locale-independent decimal text with 17 significant digits (round-trip
// exact for doubles).
std::string format_number(double v);

// RFC-4180-compatible CSV: header row, "\n" line endings, cells quoted
// only when they contain a comma, quote, or line break.
std::string to_csv(const Table& table);

// One curve of a gnuplot script: CSV path as referenced from the script's
// own directory, 1-based column indices, legend label.
struct PlotCurve {
    std::string csv_path;
    int x_column = 1;
    int y_column = 2;
    std::string label;
};

// Plain-text gnuplot script drawing the given curves with axis labels.
std::string plot_script(const std::vector<PlotCurve>& curves, const std::string& x_label,
                        const std::string& y_label, const std::string& title);

}  // namespace spinwit
