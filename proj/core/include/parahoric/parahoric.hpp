#pragma once

#include <memory>
#include <vector>

#include "parahoric/class_function.hpp"
#include "parahoric/table_store.hpp"

namespace parahoric {

/* Multiplicative group (Z/p^n)^*, cyclic for odd p. The generator is the
 * least primitive root, so discrete logarithms are reproducible.
 */
struct UnitGroup {
    int p = 0;
    int n = 0;
    long long q = 0;          // p^n
    long long order = 0;      // euler_phi(p^n)
    long long generator = 0;  // least primitive root mod p^n
    std::vector<long long> dlog;  // dlog[a] for units a < q, -1 otherwise

    static const UnitGroup& get(int p, int n);
};

/* Character of the diagonal torus T = {diag(a, a^{-1})} of level n,
 * identified with a character of (Z/p^n)^* through the top-left entry:
 *
 *   rho_k(diag(a, a^{-1})) = zeta^(k dlog a),  zeta of order phi(p^n).
 *
 * Index arithmetic is mod phi(p^n); the Weyl twist is index negation.
 */
class LCharacter {
public:
    LCharacter(int p, int n, long long index);

    int p() const { return p_; }
    int n() const { return n_; }
    long long index() const { return index_; }
    long long order_modulus() const;  // phi(p^n)

    bool is_trivial() const { return index_ == 0; }
    bool operator==(const LCharacter& o) const;
    bool operator!=(const LCharacter& o) const { return !(*this == o); }

    LCharacter weyl_dual() const;  // rho^w = rho^{-1}

    // Least c >= 1 with rho trivial on the units congruent to 1 mod p^c;
    // 0 for the trivial character.
    int conductor() const;

    Cyclotomic value_at_unit(long long a) const;  // DomainError when a is not a unit
    ClassFunction as_class_function(std::shared_ptr<const GroupModel> torus) const;

private:
    int p_, n_;
    long long index_;
};

std::vector<LCharacter> all_l_characters(int p, int n);

// Normalization scalar attached to a torus character: 1 for the trivial
// character, p^(1-c) for conductor c >= 1. Equals deg(rho)/deg of the
// irreducible the character induces to on the Iwahori group.
Rational z_value(const LCharacter& rho);

// Averaged projection onto the torus: (avg phi)(l) is the mean of
// phi(u l ubar) over the unipotent wings U x Ubar; with swap_roles the
// opposite word ubar l u is averaged. The result lives on the torus model.
ClassFunction torus_average(TableStore& store, const ClassFunction& phi,
                            bool swap_roles = false);

// Adjoint averaging up to the Iwahori group: (avg psi)(j) is the mean over
// k in J of psi(l-part of k^-1 j k), the l-part taken in the u*l*ubar
// factorization (opposite factorization with swap_roles). psi must live on
// the torus model.
ClassFunction iwahori_average(TableStore& store, const ClassFunction& psi,
                              bool swap_roles = false);

// Normalized induction to the Iwahori group: scale ch_rho by 1/z(rho), then
// average up. Always an irreducible character of degree p^(c-1).
ClassFunction parahoric_induce(TableStore& store, const LCharacter& rho,
                               bool swap_roles = false);

// rho(top-left entry) as a class function on the named subgroup of the same
// level. Demands that the top-left entry be rho-constant on conjugacy
// classes (true whenever the unipotent part is normal and rho is deep
// enough); DomainError otherwise.
ClassFunction diagonal_extension(TableStore& store, const LCharacter& rho,
                                 SubgroupTag tag, int param = 0);

// Independent route to the same irreducible: induce the one-dimensional
// extension of rho from the congruence subgroup of depth max(conductor, 1).
ClassFunction parahoric_induce_via_congruence(TableStore& store, const LCharacter& rho);

// Fourier coordinates of a torus class function against rho_0..rho_{phi-1}.
std::vector<Rational> torus_coordinates(TableStore& store, const ClassFunction& phi);

// Normalized restriction: torus-average, then divide the rho_k-coordinate by
// z(rho_k). With require_genuine set, any coordinate that is not a
// nonnegative integer raises InternalError (it would contradict the
// restriction theorem for genuine characters).
ClassFunction parahoric_restrict(TableStore& store, const ClassFunction& pi,
                                 bool require_genuine = true);

// Ordinary induction from the Iwahori group to the full group at its level.
ClassFunction edge_induce_standard(TableStore& store, const ClassFunction& phi);

// Induction to the full group one level up: pull phi back along the
// level-lowering edge homomorphism (lower Iwahori at level n+1 -> upper
// Iwahori at level n), then induce.
ClassFunction edge_induce_opposite(TableStore& store, const ClassFunction& phi);

// The two vertex inductions of a torus character.
ClassFunction vertex_induce_standard(TableStore& store, const LCharacter& rho);
ClassFunction vertex_induce_opposite(TableStore& store, const LCharacter& rho);

// Characters of the U- and Ubar-invariants of pi, as torus characters at
// pi's own level. pi may live on any group of its level containing the wing.
ClassFunction upper_invariants(TableStore& store, const ClassFunction& pi);
ClassFunction lower_invariants(TableStore& store, const ClassFunction& pi);

// Weyl twist diag(a, a^{-1}) -> diag(a^{-1}, a) of a torus class function.
ClassFunction weyl_twist(const ClassFunction& phi);

// Pullback along reduction mod p^n to a model at a deeper level. Every
// element of the deeper model must reduce into phi's group.
ClassFunction inflate(const ClassFunction& phi, std::shared_ptr<const GroupModel> deeper);

/* Alternating-word moments m_k = trace of (e_U e_Ubar)^k in the
 * representation with character chi on the Iwahori group, i.e. the average
 * of chi over words u_1 v_1 ... u_k v_k. Computed by group-algebra
 * convolution; the nominal word count (|U||Ubar|)^k_max must stay within
 * max_words (ResourceError otherwise). Returns m_1 .. m_k_max.
 */
std::vector<Cyclotomic> dihedral_moments(TableStore& store, const ClassFunction& chi,
                                         int k_max, long long max_words);

}  // namespace parahoric
