#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "stabcat/category.hpp"
#include "stabcat/presheaf.hpp"
#include "stabcat/preorder.hpp"
#include "stabcat/report.hpp"
#include "stabcat/system.hpp"

namespace stabcat::io {

// File formats (JSON):
//
//   {"kind":"preord","elements":[...],"leq":[["a","b"],...],"strict":false}
//   {"kind":"cat","objects":[...],"arrows":[{"name","dom","cod"},...],
//    "identities":{"obj":"arrow"},"compose":[["g","f","gf"],...]}
//   {"kind":"presheaf","index":<preord>,"components":{"p":<preord>,...},
//    "restrictions":[{"from":"q","to":"p","map":{"x":"y",...}},...]}
//   {"kind":"map","source":<preord>,"target":<preord>,"assign":{"x":"y",...}}
//   {"kind":"functor","source":<cat>,"target":<cat>,"objects":{...},"arrows":{...}}
//
// Wherever an object or map is expected, a string is read as a path relative
// to the referring file. Unknown fields are rejected. Every failure is an
// Error whose message starts with the file and the offending field.

using AnyObject = std::variant<FinPreord, FinCat, PreordPresheaf>;
using AnyMap = std::variant<MonotoneMap, Functor>;
using AnyCorpus = std::variant<Corpus<FinPreord>, Corpus<FinCat>, Corpus<PreordPresheaf>>;

Json read_json(const std::filesystem::path& path);

/// `strict` forces the relation to be a preorder already, whatever the
/// file's own "strict" field says.
FinPreord preord_from_json(const Json& j, bool strict = false, const std::string& where = "<json>");
FinCat cat_from_json(const Json& j, const std::string& where = "<json>");
PreordPresheaf presheaf_from_json(const Json& j, const std::filesystem::path& base, bool strict = false,
                                  const std::string& where = "<json>");
AnyObject object_from_json(const Json& j, const std::filesystem::path& base, bool strict = false,
                           const std::string& where = "<json>");
AnyMap map_from_json(const Json& j, const std::filesystem::path& base, bool strict = false,
                     const std::string& where = "<json>");

AnyObject load_object(const std::filesystem::path& path, bool strict = false);
AnyMap load_map(const std::filesystem::path& path, bool strict = false);
/// Either a map or functor file, or an object file.
std::variant<AnyObject, AnyMap> load_any(const std::filesystem::path& path, bool strict = false);

/// "gen:preord<=N", "gen:cat-fixtures", "gen:presheaf", or a directory of
/// object files of a single kind (read in file-name order, named by stem).
AnyCorpus load_corpus(const std::string& selector, bool strict = false);

}  // namespace stabcat::io
