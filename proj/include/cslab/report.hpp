#pragma once

#include <string>
#include <vector>

#include "cslab/experiments.hpp"

namespace cslab {

/// JSON array of report objects, schema_version 1. Round-trip-exact doubles.
std::string reports_to_json(const std::vector<ExperimentReport>& reports);

/// Flat projection for spreadsheets:
/// name,param_summary,raw,reduced_mod_z,expected,abs_error,pass,elapsed_ms
std::string reports_to_csv(const std::vector<ExperimentReport>& reports);

/// Human-oriented one-line-per-report summary.
std::string reports_to_text(const std::vector<ExperimentReport>& reports);

void write_file(const std::string& path, const std::string& contents);

} // namespace cslab
