#include <numeric>

#include "doctest.h"
#include "parahoric/errors.hpp"
#include "parahoric/group_model.hpp"

using namespace parahoric;

namespace {
std::shared_ptr<const GroupModel> build(Modulus m, SubgroupTag tag, int param = 0) {
    return GroupModel::build(m, tag, param, 1000000);
}
}  // namespace

TEST_SUITE("group-model") {

TEST_CASE("orders of the standard subgroups at level two") {
    const Modulus m(3, 2);
    struct Row {
        SubgroupTag tag;
        int param;
        long long order;
    };
    const Row rows[] = {
        {SubgroupTag::FullSL2, 0, 648},
        {SubgroupTag::IwahoriUpper, 0, 162},
        {SubgroupTag::IwahoriLower, 0, 162},
        {SubgroupTag::UnipUpper, 0, 9},
        {SubgroupTag::UnipLower, 0, 3},
        {SubgroupTag::Diagonal, 0, 6},
        {SubgroupTag::IwahoriIntersection, 0, 54},
        {SubgroupTag::LowerBorel, 0, 18},
        {SubgroupTag::Congruence, 1, 162},
        {SubgroupTag::Congruence, 2, 54},
    };
    for (const Row& r : rows) {
        CAPTURE(tag_name(r.tag));
        CHECK(predicted_order(m, r.tag, r.param) == r.order);
        CHECK(build(m, r.tag, r.param)->order() == r.order);
    }
    CHECK(build(Modulus(3, 1), SubgroupTag::FullSL2)->order() == 24);
}

TEST_CASE("class data is a partition compatible with conjugation") {
    auto K = build(Modulus(3, 1), SubgroupTag::FullSL2);
    CHECK(K->class_count() == 7);
    CHECK(std::accumulate(K->class_size.begin(), K->class_size.end(), 0LL) == 24);

    // every element lands in the class of its representative
    for (const auto& g : K->elements) {
        const long cls = K->class_of(g);
        CHECK(element_order(g) == K->rep_order[(size_t)cls]);
    }
    // conjugation preserves the class, inversion hits inverse_class
    const auto& w = ResidueMatrix::weyl(Modulus(3, 1));
    for (long cls = 0; cls < K->class_count(); ++cls) {
        const ResidueMatrix rep = K->representative(cls);
        CHECK(K->class_of(conjugate(w, rep)) == cls);
        CHECK(K->class_of(rep.inverse()) == K->inverse_class[(size_t)cls]);
    }
    CHECK(K->exponent == 12);
}

TEST_CASE("exponent of the deep full group") {
    auto K3 = build(Modulus(3, 3), SubgroupTag::FullSL2);
    CHECK(K3->order() == 17496);
    CHECK(K3->exponent == 108);
}

TEST_CASE("abelian groups split into singletons") {
    auto L = build(Modulus(3, 2), SubgroupTag::Diagonal);
    CHECK(L->class_count() == 6);
    for (long long s : L->class_size) CHECK(s == 1);
}

TEST_CASE("triangular factorization round-trips over the whole group") {
    const Modulus m(3, 2);
    auto J = build(m, SubgroupTag::IwahoriUpper);
    auto U = build(m, SubgroupTag::UnipUpper);
    auto L = build(m, SubgroupTag::Diagonal);
    auto Ub = build(m, SubgroupTag::UnipLower);
    REQUIRE(J->order() == U->order() * L->order() * Ub->order());
    for (const auto& g : J->elements) {
        const IwahoriTriple t = iwahori_factorize(g);
        CHECK(U->contains(t.u));
        CHECK(L->contains(t.l));
        CHECK(Ub->contains(t.ubar));
        CHECK(t.u * t.l * t.ubar == g);
        const IwahoriTriple s = iwahori_factorize_opposite(g);
        CHECK(s.ubar * s.l * s.u == g);
    }
}

TEST_CASE("power maps stay inside the class structure") {
    auto J = build(Modulus(3, 2), SubgroupTag::IwahoriUpper);
    for (long cls = 0; cls < J->class_count(); ++cls) {
        const ResidueMatrix rep = J->representative(cls);
        CHECK(J->power_class(cls, 2) == J->class_of(rep * rep));
        CHECK(J->power_class(cls, 1) == cls);
    }
}

TEST_CASE("double cosets of the Iwahori subgroup in the vertex group") {
    const Modulus m(3, 1);
    auto J = build(m, SubgroupTag::IwahoriUpper);
    auto K = build(m, SubgroupTag::FullSL2);
    const DoubleCosets dc = double_coset_decomposition(*J, *K);
    REQUIRE(dc.coset_rep.size() == 2);
    std::vector<long long> sizes = dc.coset_size;
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes[0] == 6);
    CHECK(sizes[1] == 18);
    const int cw = dc.coset_of[(size_t)K->element_index(ResidueMatrix::weyl(m))];
    CHECK(dc.coset_size[(size_t)cw] == 18);
}

TEST_CASE("membership and lookup") {
    const Modulus m(3, 2);
    auto J = build(m, SubgroupTag::IwahoriUpper);
    CHECK(J->contains(ResidueMatrix(m, 1, 1, 3, 4)));
    CHECK_FALSE(J->contains(ResidueMatrix(m, 1, 0, 1, 1)));
    CHECK(J->element_index(ResidueMatrix(m, 1, 0, 1, 1)) == -1);
    CHECK_THROWS_AS(J->class_of(ResidueMatrix(m, 1, 0, 1, 1)), DomainError);
}

TEST_CASE("enumeration budget is enforced") {
    CHECK_THROWS_AS(GroupModel::build(Modulus(3, 3), SubgroupTag::FullSL2, 0, 100),
                    ResourceError);
}

TEST_CASE("model keys name the group uniquely") {
    const Modulus m(3, 2);
    CHECK(model_key(m, SubgroupTag::FullSL2, 0) == "p3N2:full");
    CHECK(model_key(m, SubgroupTag::Congruence, 2) == "p3N2:congruence:2");
    CHECK(build(m, SubgroupTag::Diagonal)->key_string() ==
          model_key(m, SubgroupTag::Diagonal, 0));
}

}  // TEST_SUITE
