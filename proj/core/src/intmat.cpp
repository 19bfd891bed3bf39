#include "parahoric/intmat.hpp"

#include <numeric>

#include "parahoric/errors.hpp"

namespace parahoric {

long matrix_rank(RationalMatrix m) {
    if (m.empty()) return 0;
    const size_t rows = m.size();
    const size_t cols = m[0].size();
    for (const auto& r : m)
        if (r.size() != cols) throw DomainError("matrix_rank: ragged matrix");
    long rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pick = row;
        while (pick < rows && m[pick][col] == 0) ++pick;
        if (pick == rows) continue;
        std::swap(m[pick], m[row]);
        const Rational inv = Rational(1) / m[row][col];
        for (size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (size_t i = row + 1; i < rows; ++i) {
            if (m[i][col] == 0) continue;
            const Rational f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

RationalMatrix flatten_to_rational_rows(const std::vector<std::vector<Cyclotomic>>& rows) {
    long e = 1;
    size_t width = 0;
    for (const auto& r : rows) {
        width = std::max(width, r.size());
        for (const Cyclotomic& v : r) e = std::lcm(e, v.conductor_bound());
    }
    const long phi = euler_phi(e);
    RationalMatrix out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<Rational> flat(width * (size_t)phi, Rational(0));
        for (size_t i = 0; i < r.size(); ++i) {
            const Cyclotomic lift = r[i].lifted(e);
            const std::vector<Rational>& c = lift.coords();
            for (size_t j = 0; j < c.size(); ++j) flat[i * (size_t)phi + j] = c[j];
        }
        out.push_back(std::move(flat));
    }
    return out;
}

}  // namespace parahoric
