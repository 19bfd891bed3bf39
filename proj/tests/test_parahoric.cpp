#include <algorithm>

#include "doctest.h"
#include "parahoric/errors.hpp"
#include "parahoric/parahoric.hpp"
#include "parahoric/table_store.hpp"

using namespace parahoric;

namespace {
TableStore& shared_store() {
    static TableStore store;  // no disk cache, in-memory only
    return store;
}
}  // namespace

TEST_SUITE("parahoric") {

TEST_CASE("unit group of the level-two residue ring") {
    const UnitGroup& ug = UnitGroup::get(3, 2);
    CHECK(ug.order == 6);
    CHECK(ug.generator == 2);
    // discrete logarithms actually invert the power map
    long long x = 1;
    for (long long e = 0; e < ug.order; ++e) {
        CHECK(ug.dlog[(size_t)x] == e);
        x = x * ug.generator % ug.q;
    }
    CHECK_THROWS_AS(UnitGroup::get(2, 1), DomainError);
}

TEST_CASE("torus characters: values, duals, conductor profile") {
    const auto rhos = all_l_characters(3, 2);
    REQUIRE(rhos.size() == 6);

    // conductor profile on index: 0 for trivial, 1 on the order-2 part,
    // 2 on everything of full order
    const int expected_conductor[] = {0, 2, 2, 1, 2, 2};
    for (size_t k = 0; k < rhos.size(); ++k) {
        CAPTURE(k);
        CHECK(rhos[k].conductor() == expected_conductor[k]);
        CHECK(rhos[k].weyl_dual().index() == (long long)((6 - k) % 6));
    }
    CHECK(rhos[0].is_trivial());

    // each character is multiplicative on the units
    for (const auto& rho : rhos)
        for (long long a = 1; a < 9; ++a) {
            if (a % 3 == 0) continue;
            for (long long b = 1; b < 9; ++b) {
                if (b % 3 == 0) continue;
                CHECK(rho.value_at_unit(a * b % 9) ==
                      rho.value_at_unit(a) * rho.value_at_unit(b));
            }
        }
    CHECK_THROWS_AS(rhos[1].value_at_unit(3), DomainError);
}

TEST_CASE("normalizing factors at level two") {
    const auto rhos = all_l_characters(3, 2);
    std::vector<Rational> zs;
    for (const auto& rho : rhos) zs.push_back(z_value(rho));
    std::sort(zs.begin(), zs.end());
    const std::vector<Rational> want = {Rational(1, 3), Rational(1, 3), Rational(1, 3),
                                        Rational(1, 3), Rational(1), Rational(1)};
    CHECK(zs == want);
}

TEST_CASE("normalized induction lands on irreducible table rows") {
    TableStore& store = shared_store();
    const Modulus m(3, 2);
    auto L = store.model(m, SubgroupTag::Diagonal);
    auto tabJ = store.table(m, SubgroupTag::IwahoriUpper);
    const auto rhos = all_l_characters(3, 2);

    for (const auto& rho : rhos) {
        const ClassFunction pi = parahoric_induce(store, rho);
        CHECK(tabJ->index_of(pi) >= 0);
        CHECK(pi == parahoric_induce_via_congruence(store, rho));
        CHECK(pi == parahoric_induce(store, rho, true));

        // restriction is a genuine section
        const ClassFunction back = parahoric_restrict(store, pi);
        CHECK(back == rho.as_class_function(L));
    }
}

TEST_CASE("restriction coordinates are exact on the torus") {
    TableStore& store = shared_store();
    const Modulus m(3, 2);
    auto L = store.model(m, SubgroupTag::Diagonal);
    const auto rhos = all_l_characters(3, 2);
    for (size_t k = 0; k < rhos.size(); ++k) {
        const auto coords = torus_coordinates(store, rhos[k].as_class_function(L));
        for (size_t j = 0; j < coords.size(); ++j)
            CHECK(coords[j] == Rational(j == k ? 1 : 0));
    }
}

TEST_CASE("adjointness of the averaging pair") {
    TableStore& store = shared_store();
    const Modulus m(3, 2);
    auto L = store.model(m, SubgroupTag::Diagonal);
    auto tabJ = store.table(m, SubgroupTag::IwahoriUpper);
    const auto rhos = all_l_characters(3, 2);

    for (const auto& rho : rhos) {
        const ClassFunction ch = rho.as_class_function(L);
        const ClassFunction lifted = iwahori_average(store, ch);
        for (const auto& pi : tabJ->irr)
            CHECK(inner_product(lifted, pi) == inner_product(ch, torus_average(store, pi)));
    }
}

TEST_CASE("vertex induction: intertwining numbers and degrees") {
    TableStore& store = shared_store();
    const auto rhos = all_l_characters(3, 1);
    REQUIRE(rhos.size() == 2);
    const ClassFunction a = vertex_induce_standard(store, rhos[0]);
    const ClassFunction b = vertex_induce_standard(store, rhos[1]);

    // the trivial and the sign character are both self-dual at depth one
    CHECK(inner_product(a, a) == 2);
    CHECK(inner_product(b, b) == 2);
    CHECK(inner_product(a, b) == 0);
    CHECK(a.degree() == Cyclotomic((long long)4));

    const ClassFunction ao = vertex_induce_opposite(store, rhos[0]);
    CHECK(inner_product(ao, ao) == 2);
    CHECK(ao.degree() == Cyclotomic((long long)4));
}

TEST_CASE("alternating-word moments decay geometrically") {
    TableStore& store = shared_store();
    const auto rhos = all_l_characters(3, 2);
    // index 1 has conductor 2, so z = 1/3
    const ClassFunction pi = parahoric_induce(store, rhos[1]);
    const auto mo = dihedral_moments(store, pi, 3, 100000000);
    REQUIRE(mo.size() == 3);
    CHECK(mo[0] == Cyclotomic(Rational(1, 3)));
    CHECK(mo[1] == Cyclotomic(Rational(1, 9)));
    CHECK(mo[2] == Cyclotomic(Rational(1, 27)));

    CHECK_THROWS_AS(dihedral_moments(store, pi, 3, 10), ResourceError);
}

TEST_CASE("wing invariants vanish exactly off the image of induction") {
    TableStore& store = shared_store();
    const Modulus m(3, 2);
    auto tabJ = store.table(m, SubgroupTag::IwahoriUpper);
    long with_invariants = 0;
    for (const auto& pi : tabJ->irr) {
        const ClassFunction up = upper_invariants(store, pi);
        const ClassFunction low = lower_invariants(store, pi);
        const Rational pairing = inner_product(low, up);
        CHECK((pairing == 0 || pairing == 1));
        const ClassFunction r = parahoric_restrict(store, pi);
        if (!r.is_zero()) {
            ++with_invariants;
            CHECK(up == low);
            CHECK(pairing == 1);
        }
    }
    // one irreducible per torus character carries invariants
    CHECK(with_invariants == 6);
}

TEST_CASE("one-dimensional extensions refuse non-constant data") {
    TableStore& store = shared_store();
    const auto rhos = all_l_characters(3, 2);
    // the top-left entry is not class-constant on the full Iwahori group
    CHECK_THROWS_AS(diagonal_extension(store, rhos[1], SubgroupTag::IwahoriUpper),
                    DomainError);
    // but is constant on the lower Borel subgroup
    const ClassFunction ext = diagonal_extension(store, rhos[1], SubgroupTag::LowerBorel);
    CHECK(ext.degree() == Cyclotomic((long long)1));
    CHECK(inner_product(ext, ext) == 1);
}

TEST_CASE("inflation from a shallower level") {
    TableStore& store = shared_store();
    auto L1 = store.model(Modulus(3, 1), SubgroupTag::Diagonal);
    auto L2 = store.model(Modulus(3, 2), SubgroupTag::Diagonal);
    const auto sig = all_l_characters(3, 1);
    for (const auto& s : sig) {
        const ClassFunction lifted = inflate(s.as_class_function(L1), L2);
        CHECK(lifted.degree() == Cyclotomic((long long)1));
        // the lift is again multiplicative, hence one of the level-two characters
        const auto coords = torus_coordinates(store, lifted);
        Rational total = 0;
        for (const auto& v : coords) total += v;
        CHECK(total == 1);
    }
    // inflation refuses a level decrease
    const auto deep = all_l_characters(3, 2);
    CHECK_THROWS_AS(inflate(deep[0].as_class_function(L2), L1), DomainError);
}

}  // TEST_SUITE
