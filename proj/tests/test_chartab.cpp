#include <algorithm>

#include "doctest.h"
#include "parahoric/class_function.hpp"
#include "parahoric/dixon.hpp"
#include "parahoric/errors.hpp"
#include "parahoric/group_model.hpp"

using namespace parahoric;

namespace {
std::shared_ptr<const GroupModel> build(Modulus m, SubgroupTag tag, int param = 0) {
    return GroupModel::build(m, tag, param, 1000000);
}

ClassFunction trivial_on(std::shared_ptr<const GroupModel> g) {
    std::vector<Cyclotomic> vals((size_t)g->class_count(), Cyclotomic((long long)1));
    return ClassFunction(std::move(g), std::move(vals));
}
}  // namespace

TEST_SUITE("character-tables") {

TEST_CASE("depth-one full group: counts, degrees, orthogonality") {
    auto K = build(Modulus(3, 1), SubgroupTag::FullSL2);
    const CharacterTable tab = build_character_table(K);
    REQUIRE(tab.irr.size() == 7);

    std::vector<long long> degrees;
    Rational square_sum = 0;
    for (const auto& chi : tab.irr) {
        const Rational d = chi.degree().rational_part();
        degrees.push_back(boost::multiprecision::numerator(d).convert_to<long long>());
        square_sum += d * d;
    }
    std::sort(degrees.begin(), degrees.end());
    CHECK(degrees == std::vector<long long>{1, 1, 1, 2, 2, 2, 3});
    CHECK(square_sum == 24);

    for (size_t i = 0; i < tab.irr.size(); ++i)
        for (size_t j = i; j < tab.irr.size(); ++j)
            CHECK(inner_product(tab.irr[i], tab.irr[j]) == Rational(i == j ? 1 : 0));
}

TEST_CASE("rows are sorted and indexable") {
    auto J = build(Modulus(3, 2), SubgroupTag::IwahoriUpper);
    const CharacterTable tab = build_character_table(J);
    for (size_t i = 0; i + 1 < tab.irr.size(); ++i)
        CHECK(character_less(tab.irr[i], tab.irr[i + 1]));
    for (size_t i = 0; i < tab.irr.size(); ++i)
        CHECK(tab.index_of(tab.irr[i]) == (long)i);
    CHECK(tab.index_of(tab.irr[0] + tab.irr[1]) == -1);
}

TEST_CASE("decomposition recovers coordinates") {
    auto K = build(Modulus(3, 1), SubgroupTag::FullSL2);
    const CharacterTable tab = build_character_table(K);

    for (size_t i = 0; i < tab.irr.size(); ++i) {
        const VirtualCharacter d = decompose(tab.irr[i], tab);
        for (size_t j = 0; j < d.coords.size(); ++j)
            CHECK(d.coords[j] == Rational(i == j ? 1 : 0));
        CHECK(d.is_genuine());
    }

    // the regular character decomposes with multiplicity = degree
    std::vector<Cyclotomic> reg((size_t)K->class_count());
    reg[(size_t)K->identity_class] = Cyclotomic((long long)K->order());
    const VirtualCharacter d = decompose(ClassFunction(K, std::move(reg)), tab);
    for (size_t j = 0; j < d.coords.size(); ++j)
        CHECK(d.coords[j] == tab.irr[j].degree().rational_part());
}

TEST_CASE("induction: degree scaling and Frobenius reciprocity") {
    const Modulus m(3, 1);
    auto J = build(m, SubgroupTag::IwahoriUpper);
    auto K = build(m, SubgroupTag::FullSL2);
    const CharacterTable tabJ = build_character_table(J);
    const CharacterTable tabK = build_character_table(K);

    const ClassFunction ind_triv = induce(trivial_on(J), K);
    CHECK(ind_triv.degree() == Cyclotomic((long long)4));
    CHECK(inner_product(ind_triv, trivial_on(K)) == 1);

    for (const auto& phi : tabJ.irr)
        for (const auto& chi : tabK.irr)
            CHECK(inner_product(induce(phi, K), chi) ==
                  inner_product(phi, restrict_to(chi, J)));
}

TEST_CASE("induction is transitive through an intermediate subgroup") {
    const Modulus m(3, 2);
    auto L = build(m, SubgroupTag::Diagonal);
    auto B = build(m, SubgroupTag::LowerBorel);
    auto J = build(m, SubgroupTag::IwahoriUpper);
    const CharacterTable tabL = build_character_table(L);
    for (const auto& phi : tabL.irr)
        CHECK(induce(phi, J) == induce(induce(phi, B), J));
}

TEST_CASE("inner automorphisms fix every class function") {
    const Modulus m(3, 2);
    auto J = build(m, SubgroupTag::IwahoriUpper);
    const CharacterTable tab = build_character_table(J);
    const ResidueMatrix g(m, 1, 1, 3, 4);
    REQUIRE(J->contains(g));
    for (const auto& chi : tab.irr) CHECK(twist(chi, g) == chi);
}

TEST_CASE("unipotent invariants of the trivial and regular characters") {
    const Modulus m(3, 2);
    auto J = build(m, SubgroupTag::IwahoriUpper);
    auto U = build(m, SubgroupTag::UnipUpper);
    auto L = build(m, SubgroupTag::Diagonal);

    const ClassFunction t = invariants_character(trivial_on(J), *U, L);
    CHECK(t == trivial_on(L));

    // averaging over a subgroup the target does not normalize is refused
    auto Ub = build(m, SubgroupTag::UnipLower);
    CHECK_THROWS_AS(invariants_character(trivial_on(J), *U, Ub), DomainError);
}

TEST_CASE("inner products detect non-characters") {
    auto L = build(Modulus(3, 2), SubgroupTag::Diagonal);
    const CharacterTable tab = build_character_table(L);
    const ClassFunction mix = tab.irr[0] + tab.irr[1];
    CHECK(inner_product(mix, mix) == 2);
    CHECK(inner_product_value(mix, tab.irr[0]) == Cyclotomic((long long)1));
}

}  // TEST_SUITE
