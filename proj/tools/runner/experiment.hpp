#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace qdc::runner {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> headers;
  std::vector<std::vector<double>> rows;

  /// Index of a header; throws std::out_of_range.
  std::size_t column(const std::string& name) const;
  std::vector<double> column_values(const std::string& name) const;
};

struct RunOptions {
  unsigned threads = 0;  // 0 = hardware concurrency; never changes the numbers
  std::string timestamp;  // written as metadata only when non-empty
};

ResultTable run(const ExperimentConfig& config, const RunOptions& options = {});

/// Metadata as "# key: value" lines, then a header row, then one row per
/// grid point. Values use the shortest round-trip decimal form.
void write_csv(const ResultTable& table, std::ostream& out);
void write_csv(const ResultTable& table, const std::string& path);

std::string version();

}  // namespace qdc::runner
