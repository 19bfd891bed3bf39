#include "doctest.h"
#include "parahoric/errors.hpp"
#include "parahoric/group_model.hpp"
#include "parahoric/residue.hpp"

using namespace parahoric;

TEST_SUITE("residue") {

TEST_CASE("modulus validates its arguments") {
    CHECK_NOTHROW(Modulus(3, 2));
    CHECK_NOTHROW(Modulus(7, 1));
    CHECK_THROWS_AS(Modulus(4, 1), DomainError);
    CHECK_THROWS_AS(Modulus(3, 0), DomainError);
    CHECK_THROWS_AS(Modulus(-3, 1), DomainError);
    CHECK(Modulus(3, 4).q == 81);
}

TEST_CASE("residue integers: units, inverses, valuation") {
    const Modulus m(3, 2);
    const ResidueInt four(m, 4);
    CHECK(four.is_unit());
    CHECK((four * four.inverse()).value() == 1);
    CHECK_FALSE(ResidueInt(m, 6).is_unit());
    CHECK_THROWS_AS(ResidueInt(m, 6).inverse(), DomainError);

    CHECK(ResidueInt(m, 4).valuation() == 0);
    CHECK(ResidueInt(m, 6).valuation() == 1);
    CHECK(ResidueInt(m, 0).valuation() == 2);

    // negative inputs normalize into [0, q)
    CHECK(ResidueInt(m, -1).value() == 8);
}

TEST_CASE("matrix arithmetic and inverses") {
    const Modulus m(3, 2);
    const ResidueMatrix g(m, 1, 1, 3, 4);
    CHECK(g.det() == 1);
    CHECK(g * g.inverse() == ResidueMatrix::identity(m));
    CHECK(g.inverse() * g == ResidueMatrix::identity(m));

    const ResidueMatrix w = ResidueMatrix::weyl(m);
    CHECK(w * w * w * w == ResidueMatrix::identity(m));
    CHECK(element_order(w) == 4);

    // associativity spot check
    const ResidueMatrix h(m, 2, 1, 1, 1);
    const ResidueMatrix k(m, 1, 0, 3, 1);
    CHECK((g * h) * k == g * (h * k));
}

TEST_CASE("reduction to a shallower level") {
    const Modulus m(3, 2);
    const ResidueMatrix g(m, 1, 1, 3, 4);
    const ResidueMatrix r = g.reduce(1);
    CHECK(r.m.q == 3);
    CHECK(r == ResidueMatrix(Modulus(3, 1), 1, 1, 0, 1));
}

TEST_CASE("conjugation conventions") {
    const Modulus m(3, 2);
    const ResidueMatrix g(m, 1, 1, 3, 4);
    const ResidueMatrix w = ResidueMatrix::weyl(m);
    // closed form w g w^{-1} = [[d,-c],[-b,a]]
    CHECK(weyl_conjugate(g) == conjugate(w, g));
    CHECK(weyl_conjugate(g) == ResidueMatrix(m, 4, 6, 8, 1));
    // conjugation preserves order
    CHECK(element_order(conjugate(g, w)) == element_order(w));
}

TEST_CASE("packing is injective on a full group") {
    const Modulus m(3, 2);
    auto K = GroupModel::build(m, SubgroupTag::FullSL2, 0, 1000000);
    std::vector<uint64_t> keys;
    for (const auto& g : K->elements) keys.push_back(g.pack());
    std::sort(keys.begin(), keys.end());
    CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
}

TEST_CASE("triangular factorization worked example") {
    const Modulus m(3, 2);
    const ResidueMatrix g(m, 1, 1, 3, 4);
    const IwahoriTriple t = iwahori_factorize(g);
    CHECK(t.l == ResidueMatrix(m, 7, 0, 0, 4));
    CHECK(t.u == ResidueMatrix(m, 1, 7, 0, 1));
    CHECK(t.ubar == ResidueMatrix(m, 1, 0, 3, 1));
    CHECK(t.u * t.l * t.ubar == g);
    CHECK(lambda_projection(g) == t.l);

    const IwahoriTriple s = iwahori_factorize_opposite(g);
    CHECK(s.ubar * s.l * s.u == g);
    CHECK(s.l == ResidueMatrix(m, 1, 0, 0, 1));

    // b must be divisible by p for the opposite split, c for the standard one
    CHECK_THROWS_AS(iwahori_factorize(ResidueMatrix(m, 1, 0, 1, 1)), DomainError);
}

TEST_CASE("edge homomorphism: explicit value and kernel size") {
    const Modulus deep(3, 2);
    // b divisible by 3, so the matrix sits in the lower model
    const ResidueMatrix g(deep, 1, 3, 1, 4);
    const ResidueMatrix q = edge_homomorphism_q1(g);
    CHECK(q.m.q == 3);
    CHECK(q == ResidueMatrix(Modulus(3, 1), 1, 1, 0, 1));

    auto JL = GroupModel::build(deep, SubgroupTag::IwahoriLower, 0, 1000000);
    long kernel = 0;
    const ResidueMatrix id1 = ResidueMatrix::identity(Modulus(3, 1));
    for (const auto& x : JL->elements)
        if (edge_homomorphism_q1(x) == id1) ++kernel;
    CHECK(kernel == 27);
}

}  // TEST_SUITE
