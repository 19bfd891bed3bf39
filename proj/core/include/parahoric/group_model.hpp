#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "parahoric/residue.hpp"

namespace parahoric {

/* Finite congruence quotients of SL2 over Z/p^N, cut out by entry predicates:
 *
 *   FullSL2             all determinant-one matrices
 *   IwahoriUpper        c = 0 mod p                        ("J")
 *   IwahoriLower        b = 0 mod p                        ("J^w")
 *   UnipUpper           [[1,*],[0,1]]                      ("U")
 *   UnipLower           [[1,0],[*,1]], * = 0 mod p         ("Ubar")
 *   Diagonal            diag(a, a^{-1})                    ("L")
 *   Congruence(c)       c-entry = 0 mod p^c, 1 <= c <= N   ("J_c"; c = N gives L·U)
 *   IwahoriIntersection b = 0 mod p and c = 0 mod p        ("J cap J^w")
 *   LowerBorel          b = 0 and c = 0 mod p              ("L·Ubar")
 */
enum class SubgroupTag {
    FullSL2,
    IwahoriUpper,
    IwahoriLower,
    UnipUpper,
    UnipLower,
    Diagonal,
    Congruence,
    IwahoriIntersection,
    LowerBorel,
};

std::string tag_name(SubgroupTag tag);
// Parses the names produced by tag_name; DomainError on unknown names.
SubgroupTag tag_from_name(const std::string& name);

// Closed-form order of the subgroup; doubles as the enumeration budget check
// and as a post-enumeration invariant.
long long predicted_order(Modulus m, SubgroupTag tag, int param);

bool in_subgroup(Modulus m, SubgroupTag tag, int param, const ResidueMatrix& g);

/* Concrete finite group: elements in lexicographic (a,b,c,d) order, conjugacy
 * classes in order of their least element, which is also the stored
 * representative.  All derived data is deterministic.
 */
class GroupModel {
public:
    static std::shared_ptr<const GroupModel> build(Modulus m, SubgroupTag tag, int param,
                                                   long long max_elements);

    Modulus mod;
    SubgroupTag tag;
    int param = 0;  // Congruence depth; 0 for other tags

    std::vector<ResidueMatrix> elements;  // lex order
    std::vector<int> class_of_element;    // element index -> class index
    std::vector<int> class_rep;           // class index -> element index of least member
    std::vector<long long> class_size;
    std::vector<int> inverse_class;       // class of rep^{-1}
    std::vector<int> rep_order;           // multiplicative order of the representative
    int identity_index = -1;
    int identity_class = -1;
    long long exponent = 1;  // lcm of element orders

    long long order() const { return (long long)elements.size(); }
    int class_count() const { return (int)class_rep.size(); }

    bool contains(const ResidueMatrix& g) const;
    int element_index(const ResidueMatrix& g) const;  // -1 if absent
    int class_of(const ResidueMatrix& g) const;       // DomainError if absent
    const ResidueMatrix& representative(int cls) const { return elements[class_rep[cls]]; }

    // Class of rep^t (t may be any integer).
    int power_class(int cls, long long t) const;

    std::string key_string() const;  // "p<N>:<tag>[:<param>]" cache key piece

private:
    GroupModel() = default;
    std::unordered_map<uint64_t, int> index_;
    std::vector<std::vector<int>> power_classes_;  // class -> classes of rep^t, t < rep_order
};

int element_order(const ResidueMatrix& g);

// Cache-key / identity string for a (modulus, tag, param) triple; equals
// GroupModel::key_string() of the built model.
std::string model_key(Modulus m, SubgroupTag tag, int param = 0);

// u * l * ubar factorization of g in IwahoriUpper: l = diag(d^{-1}, d),
// u = [[1, b d^{-1}],[0,1]], ubar = [[1,0],[c d^{-1},1]].
struct IwahoriTriple {
    ResidueMatrix u, l, ubar;
};
IwahoriTriple iwahori_factorize(const ResidueMatrix& g);
// ubar * l * u factorization (roles of the unipotent wings swapped):
// l = diag(a, a^{-1}), u = [[1, a^{-1}b],[0,1]], ubar = [[1,0],[c a^{-1},1]].
IwahoriTriple iwahori_factorize_opposite(const ResidueMatrix& g);

// The l factor of the u*l*ubar factorization.
ResidueMatrix lambda_projection(const ResidueMatrix& g);

/* Level-lowering edge homomorphism IwahoriLower(N) -> IwahoriUpper(N-1):
 * [[a,b],[c,d]] -> [[a, b/p],[c*p, d]] mod p^{N-1}.  Conjugation by
 * diag(p,1) followed by reduction; surjective with kernel of size p^3.
 */
ResidueMatrix edge_homomorphism_q1(const ResidueMatrix& g);

struct DoubleCosets {
    std::vector<int> coset_of;        // element index in G -> coset id
    std::vector<int> coset_rep;       // coset id -> element index of least member
    std::vector<long long> coset_size;
};
// H\G/H for H <= G (both at the same modulus); DomainError if H is not
// contained in G.  Coset ids ordered by least member.
DoubleCosets double_coset_decomposition(const GroupModel& H, const GroupModel& G);

}  // namespace parahoric
