#pragma once

#include <memory>

#include "parahoric/class_function.hpp"

namespace parahoric {

/* Smallest prime l with l = 1 mod exponent, l*l > 4*order and l not dividing
 * order. Such a prime makes F_l a splitting field for the group in which
 * every character value is determined by its residue.
 */
long long choose_modular_prime(long long order, long long exponent);

/* Full irreducible character table by the modular eigenvector method:
 * class-sum structure constants acting on the centre of F_l G, common
 * eigenvector separation, degree recovery from the orthogonality relation,
 * and exact cyclotomic lifting through power-map discrete Fourier sums.
 * The result is exact; the construction re-reduces every lifted value mod l
 * and checks the degree sum against the group order before returning.
 */
CharacterTable build_character_table(std::shared_ptr<const GroupModel> g);

}  // namespace parahoric
