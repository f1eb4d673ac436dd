#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qhess {

/// Flat key-value experiment configuration with sections per module.
///
/// The key set is closed: every known key has a documented default and any
/// unknown key in a file or --set override is an error, so a typo cannot
/// silently change an experiment. Keys are addressed as "section.key".
/// serialize() emits all keys in schema order, so parse -> serialize ->
/// parse is the identity.
class Config {
 public:
  /// All keys at their documented defaults.
  static Config defaults();

  /// Defaults, overlaid with the file (if non-empty path) and then the
  /// key=value overrides, in that order.
  static Config load(const std::filesystem::path& file,
                     const std::vector<std::string>& overrides = {});

  /// Parses INI-style text: [section] headers, key = value lines, '#'
  /// comments. Throws std::invalid_argument on unknown keys or bad syntax.
  void parse(const std::string& text);

  /// Applies one "section.key=value" override.
  void set(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  std::string serialize() const;

  /// Comment header for output files: every resolved key, one per line,
  /// prefixed with "# ".
  std::string comment_header(const std::string& command) const;

  const std::string& get_string(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  double get_double(const std::string& key) const;

 private:
  struct Entry {
    std::string key;  // "section.key"
    std::string value;
  };
  Entry* find(const std::string& key);
  const Entry* find(const std::string& key) const;
  std::vector<Entry> entries_;  // schema order
};

}  // namespace qhess
