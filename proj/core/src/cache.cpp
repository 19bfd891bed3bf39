#include "parahoric/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "parahoric/errors.hpp"

namespace parahoric {

const char* const kCacheCodeVersion = "parahoric-1.0.0";

namespace {

std::string expect_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw DomainError(std::string("table parse: missing ") + what);
    return line;
}

std::string prefixed_value(const std::string& line, const std::string& prefix, const char* what) {
    if (line.rfind(prefix, 0) != 0)
        throw DomainError(std::string("table parse: expected ") + what + " line");
    return line.substr(prefix.size());
}

// Splits a serialize_values() row back into per-class cyclotomic strings.
std::vector<std::string> split_row(const std::string& row) {
    std::vector<std::string> parts;
    size_t pos = 0;
    while (pos <= row.size()) {
        size_t next = row.find("; ", pos);
        if (next == std::string::npos) {
            parts.push_back(row.substr(pos));
            break;
        }
        parts.push_back(row.substr(pos, next - pos));
        pos = next + 2;
    }
    return parts;
}

}  // namespace

std::string serialize_character_table(const CharacterTable& table) {
    if (!table.group) throw DomainError("serialize table: missing group");
    const GroupModel& g = *table.group;
    std::ostringstream ss;
    ss << "parahoric-table " << kCacheCodeVersion << "\n";
    ss << "group " << g.key_string() << "\n";
    ss << "order " << g.order() << "\n";
    ss << "classes " << g.class_count() << "\n";
    ss << "exponent " << g.exponent << "\n";
    ss << "prime " << table.modular_prime << "\n";
    for (int k = 0; k < g.class_count(); ++k)
        ss << "rep " << g.representative(k).to_string() << "\n";
    ss << "irr " << table.irr.size() << "\n";
    for (const ClassFunction& chi : table.irr) ss << chi.serialize_values() << "\n";
    ss << "end\n";
    return ss.str();
}

CharacterTable parse_character_table(const std::string& text, std::shared_ptr<const GroupModel> group) {
    if (!group) throw DomainError("parse table: null group");
    const GroupModel& g = *group;
    std::istringstream in(text);

    const std::string header = expect_line(in, "header");
    if (header != std::string("parahoric-table ") + kCacheCodeVersion)
        throw DomainError("table parse: version mismatch");
    if (prefixed_value(expect_line(in, "group"), "group ", "group") != g.key_string())
        throw DomainError("table parse: group mismatch");
    if (prefixed_value(expect_line(in, "order"), "order ", "order") != std::to_string(g.order()))
        throw DomainError("table parse: order mismatch");
    if (prefixed_value(expect_line(in, "classes"), "classes ", "classes") != std::to_string(g.class_count()))
        throw DomainError("table parse: class count mismatch");
    if (prefixed_value(expect_line(in, "exponent"), "exponent ", "exponent") != std::to_string(g.exponent))
        throw DomainError("table parse: exponent mismatch");
    const long long prime = std::stoll(prefixed_value(expect_line(in, "prime"), "prime ", "prime"));

    for (int k = 0; k < g.class_count(); ++k) {
        const std::string rep = prefixed_value(expect_line(in, "rep"), "rep ", "rep");
        if (rep != g.representative(k).to_string())
            throw DomainError("table parse: class representative mismatch");
    }

    const long irr_count = std::stol(prefixed_value(expect_line(in, "irr"), "irr ", "irr"));
    if (irr_count != (long)g.class_count())
        throw DomainError("table parse: irreducible count must equal class count");

    CharacterTable table;
    table.group = group;
    table.modular_prime = prime;
    long long degree_square_sum = 0;
    for (long i = 0; i < irr_count; ++i) {
        std::vector<std::string> parts = split_row(expect_line(in, "value row"));
        if ((long)parts.size() != (long)g.class_count())
            throw DomainError("table parse: wrong value count in row");
        std::vector<Cyclotomic> values;
        values.reserve(parts.size());
        for (const std::string& p : parts) values.push_back(Cyclotomic::deserialize(p));
        ClassFunction chi(group, std::move(values));
        const Cyclotomic& deg = chi.degree();
        if (!deg.is_rational()) throw DomainError("table parse: irrational degree");
        const Rational d = deg.rational_part();
        if (boost::multiprecision::denominator(d) != 1 || d <= 0)
            throw DomainError("table parse: degree must be a positive integer");
        degree_square_sum += (long long)(d.convert_to<long long>() * d.convert_to<long long>());
        table.irr.push_back(std::move(chi));
    }
    if (expect_line(in, "trailer") != "end") throw DomainError("table parse: missing trailer");
    if (degree_square_sum != g.order())
        throw DomainError("table parse: degree squares do not sum to the group order");
    for (size_t i = 1; i < table.irr.size(); ++i)
        if (!character_less(table.irr[i - 1], table.irr[i]))
            throw DomainError("table parse: rows out of canonical order");
    return table;
}

std::string table_cache_filename(const GroupModel& group) {
    std::string key = group.key_string();
    for (char& c : key)
        if (c == ':') c = '-';
    return key + ".table";
}

bool load_character_table_file(const std::string& path,
                               std::shared_ptr<const GroupModel> group,
                               CharacterTable& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        out = parse_character_table(buf.str(), std::move(group));
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

void save_character_table_file(const std::string& path, const CharacterTable& table) {
    const std::string payload = serialize_character_table(table);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ResourceError("cache write: cannot open " + tmp);
        out << payload;
        if (!out) throw ResourceError("cache write: failed writing " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ResourceError("cache write: cannot rename into " + path);
    }
}

}  // namespace parahoric
