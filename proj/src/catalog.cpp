#include "causorbit/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "causorbit/errors.hpp"

namespace causorbit {

bool iequals(std::string_view a, std::string_view b) {
  return std::ranges::equal(a, b, [](unsigned char x, unsigned char y) {
    return std::tolower(x) == std::tolower(y);
  });
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

VariableCatalog::VariableCatalog(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (trim(names_[i]).empty()) {
      throw ValidationError("catalog entry " + std::to_string(id_of(i)) + " has an empty name");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (iequals(names_[i], names_[j])) {
        throw ValidationError("duplicate catalog name '" + names_[i] + "'");
      }
    }
  }
}

std::optional<std::size_t> VariableCatalog::find(std::string_view name) const {
  name = trim(name);
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (iequals(names_[i], name)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> VariableCatalog::resolve(std::string_view token) const {
  token = trim(token);
  if (auto by_name = find(token)) return by_name;
  std::size_t id = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, id);
  if (ec == std::errc{} && ptr == end && id >= 1 && id <= names_.size()) return id - 1;
  return std::nullopt;
}

VariableCatalog builtin_catalog() {
  return VariableCatalog({
      "Five-gold-star hotels",
      "four-gold-star hotels",
      "three-gold-star hotels",
      "gold-two-star hotels",
      "one-gold-star hotels",
      "three- and two-silver-star hotels",
      "one-silver-star hotels",
      "luxury and first class Campsites",
      "second class Campsites",
      "third class Campsites",
      "all hotel establishments",
      "Total Campsites",
      "tourist apartments",
      "rural tourism accommodation establishments",
  });
}

VariableCatalog parse_catalog(std::string_view text) {
  std::vector<std::string> names;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) names.emplace_back(line);
  }
  if (names.empty()) throw ValidationError("catalog is empty");
  return VariableCatalog(std::move(names));
}

}  // namespace causorbit
