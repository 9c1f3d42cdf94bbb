#pragma once

#include "hardy/verify.hpp"

#include "json.hpp"

#include <filesystem>
#include <ostream>
#include <string>

namespace hardy::report {

using verify::VerificationReport;

/*!
 * Deterministic JSON body of a report.
 *
 * Non-finite numbers are written as the strings "inf", "-inf" and "nan".
 */
nlohmann::json to_json(VerificationReport const& rep);

//! Run metadata kept apart from the body: timestamp, thread cap, tool version
nlohmann::json metadata();

//! {"report": body, "metadata": metadata()}
nlohmann::json document(VerificationReport const& rep);

//! One row per refinement level
void write_levels_csv(std::ostream& os, VerificationReport const& rep);

//! The plot-ready trace (columns and rows); nothing when the report has none
void write_table_csv(std::ostream& os, VerificationReport const& rep);

/*!
 * Writes the JSON document to path and the CSV traces next to it as
 * <stem>.levels.csv and <stem>.table.csv. Returns the files written.
 */
std::vector<std::filesystem::path> write(VerificationReport const& rep, std::filesystem::path const& path);

//! Short human-readable summary
std::string summary(VerificationReport const& rep);

inline constexpr char const* tool_version = "0.1.0";

} // namespace hardy::report
