#pragma once

#include <memory>
#include <string>
#include <vector>

#include "parahoric/cyclotomic.hpp"
#include "parahoric/group_model.hpp"

namespace parahoric {

/* A class function on a finite matrix group, one exact cyclotomic value per
 * conjugacy class, indexed consistently with GroupModel class numbering.
 * Virtual characters are represented the same way; genuineness is a property
 * checked by decomposing against a character table, not a separate type.
 */
class ClassFunction {
public:
    explicit ClassFunction(std::shared_ptr<const GroupModel> group);
    ClassFunction(std::shared_ptr<const GroupModel> group, std::vector<Cyclotomic> values);

    const GroupModel& group() const { return *group_; }
    const std::shared_ptr<const GroupModel>& group_ptr() const { return group_; }
    long class_count() const { return (long)values_.size(); }

    const Cyclotomic& value(long cls) const;
    void set_value(long cls, Cyclotomic v);
    const std::vector<Cyclotomic>& values() const { return values_; }

    // Value at an explicit element (class lookup; DomainError if absent).
    const Cyclotomic& value_at(const ResidueMatrix& g) const;

    // Value at the identity class.
    const Cyclotomic& degree() const;

    ClassFunction& operator+=(const ClassFunction& o);
    ClassFunction& operator-=(const ClassFunction& o);
    ClassFunction operator+(const ClassFunction& o) const;
    ClassFunction operator-(const ClassFunction& o) const;
    ClassFunction operator-() const;

    // Pointwise product (tensor product of characters).
    ClassFunction operator*(const ClassFunction& o) const;

    ClassFunction scaled(const Rational& r) const;
    ClassFunction conjugated() const;

    bool operator==(const ClassFunction& o) const;
    bool operator!=(const ClassFunction& o) const { return !(*this == o); }
    bool is_zero() const;

    // Replaces every value by its minimal-conductor form.
    void minimize_values();

    // Canonical text form: class values in index order, one per line segment.
    std::string serialize_values() const;

private:
    void require_compatible(const ClassFunction& o) const;

    std::shared_ptr<const GroupModel> group_;
    std::vector<Cyclotomic> values_;
};

// Standard inner product (1/|G|) sum_k |C_k| a(g_k) conj(b(g_k)), exact.
Cyclotomic inner_product_value(const ClassFunction& a, const ClassFunction& b);

// Same, demanding a rational result (always the case for virtual characters).
Rational inner_product(const ClassFunction& a, const ClassFunction& b);

// Class fusion: for each H-class, the G-class containing it. Requires every
// H element to lie in G (same modulus, H a subgroup of G as element sets).
std::vector<long> fusion_map(const GroupModel& h, const GroupModel& g);

// Induction of a class function from a subgroup, computed through the fusion
// map:  (ind phi)(g_k) = |G| / (|H| |C_k^G|) * sum over H-classes fusing to k
// of |C_c^H| phi(c).
ClassFunction induce(const ClassFunction& phi, std::shared_ptr<const GroupModel> g);

// Restriction of a class function to a subgroup of its group.
ClassFunction restrict_to(const ClassFunction& phi, std::shared_ptr<const GroupModel> h);

// Conjugation twist (phi^x)(g) = phi(x g x^-1); x must normalize the group.
ClassFunction twist(const ClassFunction& phi, const ResidueMatrix& x);

// Character of the A-invariants of pi viewed as an L-module:
//   l |-> (1/|A|) sum_{a in A} pi(l a).
// Demands that every element of L normalize A elementwise as a set.
ClassFunction invariants_character(const ClassFunction& pi,
                                   const GroupModel& a,
                                   std::shared_ptr<const GroupModel> l);

/* Irreducible character table. Rows are sorted by (degree, then the
 * serialized value tuple, lexicographically), so the ordering is canonical
 * and reproducible across runs and machines.
 */
struct CharacterTable {
    std::shared_ptr<const GroupModel> group;
    std::vector<ClassFunction> irr;
    long long modular_prime = 0;  // prime used by the modular construction

    long index_of(const ClassFunction& chi) const;  // -1 when absent
};

// Canonical row order for character tables.
bool character_less(const ClassFunction& a, const ClassFunction& b);

// Element of the representation lattice: multiplicities against the rows of
// a table. Exact: decompose() checks that the recombination reproduces the
// input, otherwise DomainError.
struct VirtualCharacter {
    const CharacterTable* table = nullptr;
    std::vector<Rational> coords;

    bool is_integral() const;
    bool is_genuine() const;  // nonnegative integers, not all zero
    std::string to_string() const;
};

VirtualCharacter decompose(const ClassFunction& phi, const CharacterTable& table);

}  // namespace parahoric
