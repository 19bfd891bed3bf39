#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "parahoric/cache.hpp"
#include "parahoric/dixon.hpp"
#include "parahoric/errors.hpp"
#include "parahoric/table_store.hpp"

using namespace parahoric;

namespace {

std::string temp_dir(const char* leaf) {
    const auto d = std::filesystem::temp_directory_path() / leaf;
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d.string();
}

bool tables_equal(const CharacterTable& a, const CharacterTable& b) {
    if (a.irr.size() != b.irr.size()) return false;
    for (size_t i = 0; i < a.irr.size(); ++i)
        if (!(a.irr[i] == b.irr[i])) return false;
    return true;
}

}  // namespace

TEST_SUITE("cache") {

TEST_CASE("serialization round-trips byte-exactly") {
    auto L = GroupModel::build(Modulus(3, 2), SubgroupTag::Diagonal, 0, 1000000);
    const CharacterTable tab = build_character_table(L);
    const std::string text = serialize_character_table(tab);
    CHECK(serialize_character_table(tab) == text);

    const CharacterTable back = parse_character_table(text, L);
    CHECK(tables_equal(tab, back));
    CHECK(serialize_character_table(back) == text);
}

TEST_CASE("parsing rejects mismatched or corrupted input") {
    auto L = GroupModel::build(Modulus(3, 2), SubgroupTag::Diagonal, 0, 1000000);
    auto U = GroupModel::build(Modulus(3, 2), SubgroupTag::UnipUpper, 0, 1000000);
    const std::string text = serialize_character_table(build_character_table(L));

    CHECK_THROWS_AS(parse_character_table(text, U), DomainError);
    CHECK_THROWS_AS(parse_character_table("not a table", L), DomainError);

    // version stamp mismatch is a rejection, not a crash
    std::string stale = text;
    const auto pos = stale.find(kCacheCodeVersion);
    REQUIRE(pos != std::string::npos);
    stale.replace(pos, std::string(kCacheCodeVersion).size(), "parahoric-0.0.0");
    CHECK_THROWS_AS(parse_character_table(stale, L), DomainError);
}

TEST_CASE("file loading treats bad content as a miss") {
    const std::string dir = temp_dir("parahoric-cache-test");
    auto L = GroupModel::build(Modulus(3, 2), SubgroupTag::Diagonal, 0, 1000000);
    const CharacterTable tab = build_character_table(L);
    const std::string path = dir + "/" + table_cache_filename(*L);

    CharacterTable out;
    CHECK_FALSE(load_character_table_file(path, L, out));  // absent

    save_character_table_file(path, tab);
    CHECK(load_character_table_file(path, L, out));
    CHECK(tables_equal(tab, out));

    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << "corrupted\n";
    }
    CHECK_FALSE(load_character_table_file(path, L, out));
}

TEST_CASE("table store round-trips through its cache directory") {
    const std::string dir = temp_dir("parahoric-store-test");
    const Modulus m(3, 2);

    TableStore first(dir);
    auto t1 = first.table(m, SubgroupTag::Diagonal);
    const std::string path = dir + "/" + table_cache_filename(*first.model(m, SubgroupTag::Diagonal));
    REQUIRE(std::filesystem::exists(path));

    // a second store must reproduce the identical table from disk
    TableStore second(dir);
    auto t2 = second.table(m, SubgroupTag::Diagonal);
    CHECK(tables_equal(*t1, *t2));

    // repeated requests return the same cached object
    CHECK(first.table(m, SubgroupTag::Diagonal).get() == t1.get());

    // corrupt the file: a fresh store rebuilds and repairs it
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << "junk\n";
    }
    TableStore third(dir);
    auto t3 = third.table(m, SubgroupTag::Diagonal);
    CHECK(tables_equal(*t1, *t3));
    std::ifstream repaired(path);
    std::string head;
    std::getline(repaired, head);
    CHECK(head != "junk");
}

TEST_CASE("store validates its construction arguments") {
    CHECK_THROWS_AS(TableStore("", 0), DomainError);
    CHECK_THROWS_AS(TableStore("", -5), DomainError);
}

}  // TEST_SUITE
