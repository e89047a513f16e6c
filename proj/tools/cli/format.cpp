#include "cli/format.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace renyimono::cli {

namespace {

std::string variant_field(const MonogamyReport& r) {
  return r.variant ? to_string(*r.variant) : "na";
}

std::string json_number(double value) {
  return std::isfinite(value) ? format_double(value) : "null";
}

template <class T>
std::string json_list(const std::vector<T>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_floating_point_v<T>) {
      out += json_number(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out + "]";
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string sweep_csv_row(const SweepRow& row) {
  const MonogamyReport& r = row.report;
  std::string out;
  out.reserve(256);
  out += std::to_string(row.seed) + ',';
  out += std::to_string(row.sample) + ',';
  out += std::to_string(row.num_qubits) + ',';
  out += format_double(r.alpha) + ',';
  out += format_double(r.eta) + ',';
  out += to_string(r.lemma) + ',';
  out += variant_field(r) + ',';
  out += (r.m ? std::to_string(*r.m) : std::string()) + ',';
  out += (r.condition_met ? "true" : "false");
  out += ',' + format_double(r.lhs);
  out += ',' + format_double(r.rhs_new);
  out += ',' + format_double(r.rhs_baseline);
  out += ',' + format_double(r.margin);
  out += ',' + format_double(r.tightening);
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const SweepRow& row : result.rows) {
    out += sweep_csv_row(row);
    out += '\n';
  }
  return out;
}

std::string report_json(const MonogamyReport& r) {
  std::ostringstream os;
  os << "{\"lemma\":\"" << to_string(r.lemma) << "\"";
  os << ",\"variant\":" << (r.variant ? "\"" + to_string(*r.variant) + "\"" : "null");
  os << ",\"alpha\":" << json_number(r.alpha);
  os << ",\"eta\":" << json_number(r.eta);
  os << ",\"m\":" << (r.m ? std::to_string(*r.m) : "null");
  os << ",\"surrogate_condition\":" << (r.condition_met ? "true" : "false");
  os << ",\"lhs\":" << json_number(r.lhs);
  os << ",\"rhs_new\":" << json_number(r.rhs_new);
  os << ",\"rhs_baseline\":" << json_number(r.rhs_baseline);
  os << ",\"margin\":" << json_number(r.margin);
  os << ",\"tightening\":" << json_number(r.tightening);
  os << ",\"other_variant_margin\":"
     << (r.other_variant_margin ? json_number(*r.other_variant_margin) : "null");
  os << ",\"party_order\":" << json_list(r.party_order);
  os << "}";
  return os.str();
}

std::string profile_json(const MarginalProfile& p) {
  std::ostringstream os;
  os << "{\"alpha\":" << json_number(p.alpha) << ",\"c_global\":" << json_number(p.c_global)
     << ",\"c_pair\":" << json_list(p.c_pair) << ",\"e_pair\":" << json_list(p.e_pair)
     << ",\"e_global\":" << json_number(p.e_global) << ",\"parties\":" << json_list(p.parties)
     << "}";
  return os.str();
}

std::string summary_json(const SweepSummary& s) {
  std::ostringstream os;
  os << "{\"samples\":" << s.samples << ",\"rows\":" << s.rows
     << ",\"condition_met\":" << s.condition_met
     << ",\"min_margin\":" << json_number(s.min_margin)
     << ",\"min_tightening\":" << json_number(s.min_tightening)
     << ",\"violations\":" << s.violations << ",\"printed_rows\":" << s.printed_rows
     << ",\"printed_condition_met\":" << s.printed_condition_met
     << ",\"printed_violations\":" << s.printed_violations
     << ",\"printed_min_margin\":" << json_number(s.printed_min_margin) << ",\"violation_list\":[";
  for (std::size_t i = 0; i < s.violation_list.size(); ++i) {
    const SweepViolation& v = s.violation_list[i];
    if (i) os << ",";
    os << "{\"sample\":" << v.sample << ",\"lemma\":\"" << to_string(v.lemma) << "\""
       << ",\"variant\":" << (v.variant ? "\"" + to_string(*v.variant) + "\"" : "null")
       << ",\"m\":" << (v.m ? std::to_string(*v.m) : "null")
       << ",\"alpha\":" << json_number(v.alpha) << ",\"eta\":" << json_number(v.eta)
       << ",\"margin\":" << json_number(v.margin) << "}";
  }
  os << "]}";
  return os.str();
}

std::string sweep_json(const SweepResult& result) {
  std::string out = "{\"summary\":" + summary_json(result.summary) + ",\"rows\":[";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    if (i) out += ",\n";
    out += "{\"seed\":" + std::to_string(row.seed) + ",\"sample\":" + std::to_string(row.sample) +
           ",\"n_qubits\":" + std::to_string(row.num_qubits) +
           ",\"report\":" + report_json(row.report) + "}";
  }
  out += "]}\n";
  return out;
}

std::string summary_line(const SweepSummary& s) {
  std::ostringstream os;
  os << "samples=" << s.samples << " rows=" << s.rows << " condition_met=" << s.condition_met
     << " min_margin=" << format_double(s.min_margin)
     << " min_tightening=" << format_double(s.min_tightening) << " violations=" << s.violations;
  if (s.printed_rows > 0) {
    os << " printed_condition_met=" << s.printed_condition_met
       << " printed_min_margin=" << format_double(s.printed_min_margin)
       << " printed_violations=" << s.printed_violations;
  }
  return os.str();
}

void write_atomically(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  try {
    {
      std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
      file.write(content.data(), static_cast<std::streamsize>(content.size()));
      file.flush();
      if (!file) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

}  // namespace renyimono::cli
