#include "cli/settings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace renyimono::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream is(text);
  while (std::getline(is, current, separator)) {
    current = trim(current);
    if (!current.empty()) parts.push_back(current);
  }
  return parts;
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return std::string(buf, res.ptr);
  }
  throw UsageError("config: unsupported JSON value " + v.dump());
}

}  // namespace

std::optional<std::string> Settings::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Settings::text(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double Settings::real(const std::string& key, double fallback) const {
  return real(key).value_or(fallback);
}

std::optional<double> Settings::real(const std::string& key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  return parse_real(*v, "--" + key);
}

std::uint64_t Settings::unsigned_int(const std::string& key, std::uint64_t fallback) const {
  auto v = get(key);
  return v ? parse_unsigned(*v, "--" + key) : fallback;
}

std::vector<double> Settings::real_list(const std::string& key,
                                        const std::vector<double>& fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::vector<double> out;
  for (const std::string& part : split(*v, ',')) out.push_back(parse_real(part, "--" + key));
  if (out.empty()) throw UsageError("--" + key + ": empty list");
  return out;
}

std::vector<std::string> Settings::text_list(const std::string& key, char separator) const {
  auto v = get(key);
  return v ? split(*v, separator) : std::vector<std::string>{};
}

void Settings::merge(const Settings& overrides) {
  for (const auto& [k, v] : overrides.values_) values_[k] = v;
}

Settings Settings::load(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << file.rdbuf();
  const std::string text = buffer.str();
  const std::string head = trim(text);
  return !head.empty() && head.front() == '{' ? parse_json(text) : parse_key_value(text);
}

Settings Settings::parse_key_value(const std::string& text) {
  Settings s;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
    s.set(key, trim(line.substr(eq + 1)));
  }
  return s;
}

Settings Settings::parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config: top-level JSON value must be an object");
  Settings s;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_array()) {
      const char sep = key == "state" ? ';' : ',';
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += sep;
        joined += json_scalar(item);
      }
      s.set(key, joined);
    } else {
      s.set(key, json_scalar(value));
    }
  }
  return s;
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(value)) {
    throw UsageError(what + ": '" + text + "' is not a number");
  }
  return value;
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::uint64_t value = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw UsageError(what + ": '" + text + "' is not a nonnegative integer");
  }
  return value;
}

StateFamily parse_state(const std::string& spec, std::optional<std::size_t> qubits) {
  auto count_suffix = [&](std::size_t prefix_len, std::size_t fallback) -> std::size_t {
    if (spec.size() == prefix_len) return qubits.value_or(fallback);
    const std::uint64_t n = parse_unsigned(spec.substr(prefix_len), "--state " + spec);
    if (qubits && *qubits != n) {
      throw UsageError("--state " + spec + " conflicts with --qubits " + std::to_string(*qubits));
    }
    return static_cast<std::size_t>(n);
  };

  StateFamily f{family::HaarPure{}, 3};
  if (spec.rfind("gw:", 0) == 0) {
    const auto parts = split(spec.substr(3), ',');
    if (parts.size() != 3) throw UsageError("--state gw:a,b,c needs three amplitudes");
    const double a = parse_real(parts[0], "gw amplitude");
    const double b = parse_real(parts[1], "gw amplitude");
    const double c = parse_real(parts[2], "gw amplitude");
    const double norm = std::sqrt(a * a + b * b + c * c);
    if (!(norm > 0.0)) throw UsageError("--state gw: amplitudes are all zero");
    f = {family::GeneralizedW{a / norm, b / norm, c / norm}, 3};
  } else if (spec.rfind("ghz", 0) == 0) {
    f = {family::Ghz{}, count_suffix(3, 3)};
  } else if (spec.rfind("haar", 0) == 0) {
    f = {family::HaarPure{}, count_suffix(4, 3)};
  } else if (spec == "bell") {
    f = {family::Bell{}, 2};
  } else if (spec.rfind("w", 0) == 0) {
    f = {family::W{}, count_suffix(1, 3)};
  } else {
    throw UsageError("unknown state '" + spec + "' (expected ghzN, wN, gw:a,b,c, bell, haar[N])");
  }
  try {
    validate(f);
  } catch (const std::exception& e) {
    throw UsageError("--state " + spec + ": " + e.what());
  }
  return f;
}

std::vector<Lemma> parse_lemmas(const std::vector<std::string>& names) {
  std::vector<Lemma> out;
  for (const std::string& n : names) {
    auto l = parse_lemma(n);
    if (!l) throw UsageError("unknown lemma '" + n + "' (expected L2, L3, L4, L5)");
    out.push_back(*l);
  }
  return out;
}

std::vector<Lemma4Variant> parse_variants(const std::vector<std::string>& names) {
  std::vector<Lemma4Variant> out;
  for (const std::string& n : names) {
    auto v = parse_variant(n);
    if (!v) throw UsageError("unknown variant '" + n + "' (expected proof, printed)");
    out.push_back(*v);
  }
  return out;
}

}  // namespace renyimono::cli
