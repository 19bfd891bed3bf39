#pragma once

#include <cstdint>
#include <string>

#include "parahoric/errors.hpp"

namespace parahoric {

// Arithmetic in Z/p^N for a small prime p.  Values live in [0, p^N).
// p^N < 2^16 is required so a 2x2 matrix packs into one 64-bit key.

struct Modulus {
    int p = 0;
    int N = 0;
    long long q = 0;  // p^N

    Modulus() = default;
    Modulus(int p_, int N_);
    bool operator==(const Modulus&) const = default;
};

class ResidueInt {
public:
    ResidueInt() = default;
    ResidueInt(Modulus m, long long value);

    const Modulus& mod() const { return m_; }
    long long value() const { return v_; }

    ResidueInt operator+(const ResidueInt& o) const;
    ResidueInt operator-(const ResidueInt& o) const;
    ResidueInt operator*(const ResidueInt& o) const;
    ResidueInt operator-() const;
    bool operator==(const ResidueInt& o) const;

    bool is_unit() const { return v_ % m_.p != 0; }
    ResidueInt inverse() const;  // DomainError when not a unit

    // p-adic valuation truncated at N; valuation(0) = N.
    int valuation() const;

private:
    Modulus m_;
    long long v_ = 0;

    void check_same(const ResidueInt& o) const;
};

struct ResidueMatrix {
    Modulus m;
    long long a = 0, b = 0, c = 0, d = 0;  // row major [[a,b],[c,d]], values in [0,q)

    ResidueMatrix() = default;
    ResidueMatrix(Modulus mod, long long a_, long long b_, long long c_, long long d_);

    static ResidueMatrix identity(Modulus mod);
    // w = [[0,-1],[1,0]], the order-4 Weyl representative.
    static ResidueMatrix weyl(Modulus mod);

    ResidueMatrix operator*(const ResidueMatrix& o) const;
    bool operator==(const ResidueMatrix& o) const;

    long long det() const;
    bool is_sl2() const { return det() == 1 % m.q; }
    // Inverse of a determinant-one matrix (adjugate); DomainError otherwise.
    ResidueMatrix inverse() const;

    // Reduce entries mod p^n for n <= N.
    ResidueMatrix reduce(int n) const;

    uint64_t pack() const;
    // Lexicographic order on (a, b, c, d).
    bool lex_less(const ResidueMatrix& o) const;

    std::string to_string() const;
};

// x g x^{-1}; x must be invertible.
ResidueMatrix conjugate(const ResidueMatrix& x, const ResidueMatrix& g);
// w g w^{-1} = [[d,-c],[-b,a]].
ResidueMatrix weyl_conjugate(const ResidueMatrix& g);

long long pow_ll(long long base, int expo);

}  // namespace parahoric
