#pragma once

// Option values gathered from a config file and command-line flags.
//
// Config files are either JSON objects or flat `key = value` text ('#'
// starts a comment). Keys are the long flag names without dashes. Lists are
// comma separated (JSON arrays are accepted too); the `state` key of
// `compare` takes several state specs separated by ';'. Flags override the
// file.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "renyimono/monogamy.hpp"
#include "renyimono/states.hpp"

namespace renyimono::cli {

// Bad flag or config value; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

class Settings {
 public:
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;

  std::string text(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key, double fallback) const;
  std::optional<double> real(const std::string& key) const;
  std::uint64_t unsigned_int(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> real_list(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<std::string> text_list(const std::string& key, char separator) const;

  // Keys present in `overrides` replace ours.
  void merge(const Settings& overrides);

  // Throws UsageError on unreadable or malformed files.
  static Settings load(const std::filesystem::path& path);
  static Settings parse_key_value(const std::string& text);
  static Settings parse_json(const std::string& text);

 private:
  std::map<std::string, std::string> values_;
};

double parse_real(const std::string& text, const std::string& what);
std::uint64_t parse_unsigned(const std::string& text, const std::string& what);

// State specs: ghz<N>, w<N>, gw:a,b,c (amplitudes, rescaled to unit norm),
// bell, haar (uses `qubits`), haar<N>. Throws UsageError.
StateFamily parse_state(const std::string& spec, std::optional<std::size_t> qubits);

std::vector<Lemma> parse_lemmas(const std::vector<std::string>& names);
std::vector<Lemma4Variant> parse_variants(const std::vector<std::string>& names);

}  // namespace renyimono::cli
