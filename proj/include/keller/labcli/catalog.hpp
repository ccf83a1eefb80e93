#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "keller/polycore/polynomial.hpp"

namespace keller::lab {

enum class Tag { Keller, Automorphism, Power, Exploratory };

std::string toString(Tag tag);

struct CatalogEntry {
  std::string name;
  PlanarPolyMap map;
  std::set<Tag> tags;
  std::optional<int> expectedDegree;
  bool has(Tag t) const { return tags.contains(t); }
};

class MapCatalog {
 public:
  MapCatalog() = default;
  explicit MapCatalog(std::vector<CatalogEntry> entries);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  /// Throws InvalidArgument for unknown names.
  const CatalogEntry& at(const std::string& name) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> namesWith(Tag tag) const;

 private:
  std::vector<CatalogEntry> entries_;
};

/// Parses and validates: tags must match the re-derived Keller property,
/// automorphism entries must decompose, names must be unique.
/// Errors: SchemaError (with line or field path), TagMismatch, DuplicateName.
MapCatalog parseCatalog(const std::string& path);
MapCatalog parseCatalogText(const std::string& text, const std::string& source = "<string>");

nlohmann::json toJson(const MapCatalog& c);

}  // namespace keller::lab
