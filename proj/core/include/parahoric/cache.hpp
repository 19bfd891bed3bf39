#pragma once

#include <memory>
#include <string>

#include "parahoric/class_function.hpp"

namespace parahoric {

// Embedded in every cache file; any mismatch on load is treated as a miss so
// stale formats regenerate instead of being misread.
extern const char* const kCacheCodeVersion;

// Self-describing text form of a table: header (version, group identity,
// order, class count, exponent, modular prime), class representatives, then
// one serialized value row per irreducible. Deterministic; round-trips
// byte-exactly through parse_character_table.
std::string serialize_character_table(const CharacterTable& table);

// Strict parse against an existing model: the header and the class
// representative list must match the model exactly. DomainError on any
// mismatch or malformed input.
CharacterTable parse_character_table(const std::string& text, std::shared_ptr<const GroupModel> group);

// Cache file basename for a model's table, derived from its key.
std::string table_cache_filename(const GroupModel& group);

// Returns false when the file is absent or does not validate (stale version,
// wrong group, malformed); such files are simply rebuilt.
bool load_character_table_file(const std::string& path,
                               std::shared_ptr<const GroupModel> group,
                               CharacterTable& out);

// Atomic write: temporary file in the target directory, then rename.
void save_character_table_file(const std::string& path, const CharacterTable& table);

}  // namespace parahoric
