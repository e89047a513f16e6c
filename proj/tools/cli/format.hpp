#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "renyimono/monogamy.hpp"
#include "renyimono/sweep.hpp"

namespace renyimono::cli {

// 17 significant digits, locale independent ("inf", "-inf", "nan" for
// non-finite values).
std::string format_double(double value);

// Exact column order of the sweep CSV.
inline constexpr std::string_view kSweepCsvHeader =
    "seed,sample,n_qubits,alpha,eta,lemma,variant,m,condition_met,lhs,rhs_new,rhs_baseline,"
    "margin,tightening";

std::string sweep_csv_row(const SweepRow& row);
std::string sweep_csv(const SweepResult& result);
std::string sweep_json(const SweepResult& result);
std::string summary_line(const SweepSummary& summary);
std::string summary_json(const SweepSummary& summary);

std::string report_json(const MonogamyReport& report);
std::string profile_json(const MarginalProfile& profile);

// Writes to a sibling temporary file and renames it over `path`; the
// temporary is removed if anything fails.
void write_atomically(const std::filesystem::path& path, std::string_view content);

}  // namespace renyimono::cli
