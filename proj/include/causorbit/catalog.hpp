#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace causorbit {

// Variables are addressed by a 0-based index everywhere in the C++ API.
// Files and reports use the 1-based id, which is always index + 1.
inline constexpr std::size_t id_of(std::size_t index) { return index + 1; }

/// Ordered list of named variables.  Names are unique (case-insensitively)
/// and non-empty; ids are 1..size() in list order.
class VariableCatalog {
 public:
  VariableCatalog() = default;
  explicit VariableCatalog(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const { return names_; }

  /// Case-insensitive lookup by name.
  std::optional<std::size_t> find(std::string_view name) const;

  /// Resolves either a name or a 1-based numeric id.
  std::optional<std::size_t> resolve(std::string_view token) const;

  friend bool operator==(const VariableCatalog&, const VariableCatalog&) = default;

 private:
  std::vector<std::string> names_;
};

/// The fourteen accommodation types of the Spanish overnight-stay panel.
VariableCatalog builtin_catalog();

/// One name per line; blank lines and `#` comments are skipped.
VariableCatalog parse_catalog(std::string_view text);

bool iequals(std::string_view a, std::string_view b);
std::string_view trim(std::string_view s);

}  // namespace causorbit
