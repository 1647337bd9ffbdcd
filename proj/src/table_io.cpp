#include "spinwit/table_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace spinwit {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string escape_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += escape_cell(cells[i]);
    }
    out += '\n';
}

}  // namespace

std::string to_csv(const Table& table) {
    if (table.header.empty()) throw std::invalid_argument("csv: table needs a header");
    std::string out;
    append_row(out, table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw std::invalid_argument("csv: row width differs from header");
        append_row(out, row);
    }
    return out;
}

std::string plot_script(const std::vector<PlotCurve>& curves, const std::string& x_label,
                        const std::string& y_label, const std::string& title) {
    if (curves.empty()) throw std::invalid_argument("plot: need at least one curve");
    std::ostringstream out;
    out << "set datafile separator ','\n";
    out << "set xlabel '" << x_label << "'\n";
    out << "set ylabel '" << y_label << "'\n";
    if (!title.empty()) out << "set title '" << title << "'\n";
    out << "set grid\n";
    out << "set key top right\n";
    out << "plot ";
    for (std::size_t i = 0; i < curves.size(); ++i) {
        if (i) out << ", \\\n     ";
        out << "'" << curves[i].csv_path << "' skip 1 using " << curves[i].x_column << ":"
            << curves[i].y_column << " with linespoints title '" << curves[i].label << "'";
    }
    out << "\n";
    return out.str();
}

}  // namespace spinwit
