#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "gidar/estimate.hpp"
#include "gidar/laplace_exponent.hpp"

namespace gidar::io {

using Json = nlohmann::json;
using CsvRow = std::vector<std::string>;

/// RFC 4180 fields, LF line endings.
void write_csv_row(std::ostream& os, const CsvRow& row);
void write_csv(std::ostream& os, const CsvRow& header, const std::vector<CsvRow>& rows);
/// Accepts CRLF or LF; quoted fields may hold commas, quotes and newlines.
std::vector<CsvRow> read_csv(std::istream& is);

/// Shortest text that reads back to the same double.
std::string format_double(double v);

/// Series from a CSV with a header: the `y` column if present, else the last one.
std::vector<double> read_series(std::istream& is);
std::vector<double> read_series_file(const std::string& path);

/**
 * Exponents as JSON objects:
 *   {"family": "tempered_stable", "lambda": 1, "beta": 0.6}
 *   {"family": "gamma", "alpha": 2, "beta": 1}          (beta is the rate)
 *   {"family": "inverse_gaussian", "delta": 0.5, "gamma": 1}
 *   {"family": "mixture", "c": 0.4, "g1": {...}, "g2": {...}}
 *   {"family": "scaled", "theta": 0.5, "inner": {...}}
 * The short names gts, gg, gig and mix are accepted for the family.
 */
LaplaceExponent exponent_from_json(const Json& j);
Json exponent_to_json(const LaplaceExponent& g);

/// Study configs: {"exponent": {...}, "theta", "replicates", "length",
/// "burn_in", "seed", "with_intercept", "override_validity"}; only
/// "exponent" is required.
StudyConfig study_config_from_json(const Json& j);
Json study_config_to_json(const StudyConfig& c);

Json to_json(const EstimationResult& r);

}  // namespace gidar::io
