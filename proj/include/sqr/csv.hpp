#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sqr {

/// All-numeric CSV: comma separator, mandatory header, '.' decimal, UTF-8.
struct Table {
    std::vector<std::string> columns;
    Eigen::MatrixXd data;  // rows x columns

    Eigen::Index column(const std::string& name) const;  // IngestError when absent
    Eigen::VectorXd col(const std::string& name) const { return data.col(column(name)); }
};

Table read_csv(const std::string& path);

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const Eigen::MatrixXd& data);

/// Row-wise writer for mixed text/number tables.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<std::string>& cells);

  private:
    struct Impl;
    Impl* impl_;
};

}  // namespace sqr
