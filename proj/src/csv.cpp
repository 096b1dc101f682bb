#include "sqr/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sqr/errors.hpp"

namespace sqr {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, std::size_t row, std::size_t col) {
    const std::string cell = strip(raw);
    auto fail = [&](const char* why) {
        std::ostringstream msg;
        msg << why << " at row " << row << ", column " << col + 1;
        throw IngestError(msg.str());
    };
    if (cell.empty()) fail("missing value");
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) fail("non-numeric cell");
    if (!std::isfinite(value)) fail("non-finite value");
    return value;
}

}  // namespace

Eigen::Index Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<Eigen::Index>(i);
    throw IngestError("column '" + name + "' not found");
}

Table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw IngestError("empty file '" + path + "'");
    Table table;
    for (auto& name : split_line(line)) table.columns.push_back(strip(name));
    const std::size_t width = table.columns.size();

    std::vector<double> values;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != width) {
            std::ostringstream msg;
            msg << "row " << rows + 1 << " has " << cells.size() << " cells, expected " << width;
            throw IngestError(msg.str());
        }
        for (std::size_t c = 0; c < width; ++c)
            values.push_back(parse_cell(cells[c], rows + 1, c));
        ++rows;
    }
    table.data.resize(rows, width);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < width; ++c)
            table.data(r, c) = values[r * width + c];
    return table;
}

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const Eigen::MatrixXd& data) {
    if (data.size() > 0 && static_cast<std::size_t>(data.cols()) != columns.size())
        throw ShapeError("column names do not match data width");
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write '" + path + "'");
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c];
    out << "\n";
    for (Eigen::Index r = 0; r < data.rows(); ++r) {
        for (Eigen::Index c = 0; c < data.cols(); ++c)
            out << (c ? "," : "") << format_double(data(r, c));
        out << "\n";
    }
}

struct CsvWriter::Impl {
    std::ofstream out;
    std::size_t width;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : impl_(new Impl{std::ofstream(path), columns.size()}) {
    if (!impl_->out) {
        delete impl_;
        throw IngestError("cannot write '" + path + "'");
    }
    for (std::size_t c = 0; c < columns.size(); ++c)
        impl_->out << (c ? "," : "") << columns[c];
    impl_->out << "\n";
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != impl_->width) throw ShapeError("csv row width mismatch");
    for (std::size_t c = 0; c < cells.size(); ++c)
        impl_->out << (c ? "," : "") << cells[c];
    impl_->out << "\n";
}

}  // namespace sqr
