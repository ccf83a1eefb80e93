#include "keller/labcli/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "keller/autgroup/tame_word.hpp"
#include "keller/error.hpp"
#include "keller/polycore/operations.hpp"
#include "keller/polycore/serialization.hpp"

namespace keller::lab {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, where + ": " + what);
}

Tag tagFromString(const std::string& s, const std::string& where) {
  if (s == "keller") return Tag::Keller;
  if (s == "automorphism") return Tag::Automorphism;
  if (s == "power") return Tag::Power;
  if (s == "exploratory") return Tag::Exploratory;
  schema(where, "unknown tag '" + s + "'");
}

std::size_t lineOf(const std::string& text, std::size_t byte) {
  const auto end = text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size()));
  return 1 + static_cast<std::size_t>(std::count(text.begin(), end, '\n'));
}

CatalogEntry parseEntry(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) schema(where, "entry must be an object");
  for (const char* key : {"name", "map", "tags"})
    if (!j.contains(key)) schema(where, std::string("missing field '") + key + "'");
  if (!j.at("name").is_string() || j.at("name").get<std::string>().empty())
    schema(where + ".name", "must be a non-empty string");
  CatalogEntry e;
  e.name = j.at("name").get<std::string>();
  e.map = io::mapFromJson(j.at("map"), where + ".map");
  if (!j.at("tags").is_array()) schema(where + ".tags", "must be an array");
  for (std::size_t k = 0; k < j.at("tags").size(); ++k) {
    const auto& t = j.at("tags")[k];
    const std::string at = where + ".tags[" + std::to_string(k) + "]";
    if (!t.is_string()) schema(at, "must be a string");
    e.tags.insert(tagFromString(t.get<std::string>(), at));
  }
  if (j.contains("expected_degree")) {
    const auto& d = j.at("expected_degree");
    if (!d.is_number_integer() || d.get<int>() < 1) schema(where + ".expected_degree", "must be a positive integer");
    e.expectedDegree = d.get<int>();
  }
  return e;
}

void checkTags(const CatalogEntry& e) {
  const bool keller = isKeller(e.map);
  if (e.has(Tag::Keller) != keller)
    throw Error(ErrorCode::TagMismatch, "entry '" + e.name + "': keller tag " + (keller ? "missing" : "present") +
                                            " but det J = " + jacobianDeterminant(e.map).toString());
  if (e.has(Tag::Automorphism)) {
    if (!keller) throw Error(ErrorCode::TagMismatch, "entry '" + e.name + "': automorphism tag on a non-Keller map");
    try {
      aut::decomposeAutomorphism(e.map);
    } catch (const Error& err) {
      throw Error(ErrorCode::TagMismatch, "entry '" + e.name + "': tagged automorphism but " + err.what());
    }
  }
}

}  // namespace

std::string toString(Tag tag) {
  switch (tag) {
    case Tag::Keller: return "keller";
    case Tag::Automorphism: return "automorphism";
    case Tag::Power: return "power";
    case Tag::Exploratory: return "exploratory";
  }
  return "?";
}

MapCatalog::MapCatalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t a = 0; a < entries_.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (entries_[a].name == entries_[b].name)
        throw Error(ErrorCode::DuplicateName, "entry name '" + entries_[a].name + "' appears twice");
}

const CatalogEntry& MapCatalog::at(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e;
  throw Error(ErrorCode::InvalidArgument, "no catalog entry named '" + name + "'");
}

bool MapCatalog::contains(const std::string& name) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.name == name; });
}

std::vector<std::string> MapCatalog::namesWith(Tag tag) const {
  std::vector<std::string> out;
  for (const auto& e : entries_)
    if (e.has(tag)) out.push_back(e.name);
  return out;
}

MapCatalog parseCatalogText(const std::string& text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    schema(source + ":" + std::to_string(lineOf(text, e.byte)), e.what());
  }
  if (!doc.is_object() || !doc.contains("maps") || !doc.at("maps").is_array())
    schema(source, "top level must be an object with a 'maps' array");
  std::vector<CatalogEntry> entries;
  for (std::size_t k = 0; k < doc.at("maps").size(); ++k)
    entries.push_back(parseEntry(doc.at("maps")[k], source + ": maps[" + std::to_string(k) + "]"));
  MapCatalog catalog(std::move(entries));
  for (const auto& e : catalog.entries()) checkTags(e);
  return catalog;
}

MapCatalog parseCatalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parseCatalogText(ss.str(), path);
}

nlohmann::json toJson(const MapCatalog& c) {
  nlohmann::json maps = nlohmann::json::array();
  for (const auto& e : c.entries()) {
    nlohmann::json tags = nlohmann::json::array();
    for (Tag t : e.tags) tags.push_back(toString(t));
    nlohmann::json j{{"name", e.name}, {"map", io::mapToJson(e.map)}, {"tags", tags}};
    if (e.expectedDegree) j["expected_degree"] = *e.expectedDegree;
    maps.push_back(j);
  }
  return {{"maps", maps}};
}

}  // namespace keller::lab
