#pragma once

#include <complex>
#include <random>
#include <unordered_set>
#include <vector>

#include "prg/group.hpp"
#include "prg/numtheory.hpp"

namespace testutil {

using prg::Element;
using prg::GroupParams;

inline Element random_element(const GroupParams& P, std::mt19937_64& rng)
{
    return prg::element_at(P, rng() % P.order);
}

// Valid tuples with r ≤ rmax, n in [nmin,nmax], order ≤ omax.
inline std::vector<GroupParams> tuples(int rmax, int nmin, int nmax, uint64_t omax)
{
    std::vector<GroupParams> out;
    for (int n = nmin; n <= nmax; ++n)
        for (int r = 1; r <= rmax; ++r)
            for (int p = 1; p <= r; ++p)
                for (int q = 1; q <= r; ++q) {
                    if (!prg::is_valid_tuple(r, p, q, n))
                        continue;
                    auto P = prg::make_group(r, p, q, n);
                    if (P.order <= omax)
                        out.push_back(P);
                }
    return out;
}

// Dense complex monomial matrix of a lift: column i has zeta^{x_i} in row pi(i).
using CMat = std::vector<std::vector<std::complex<double>>>;

inline CMat to_matrix(const GroupParams& P, const Element& e)
{
    const double two_pi = 6.283185307179586;
    CMat m(P.n, std::vector<std::complex<double>>(P.n, 0.0));
    for (int i = 0; i < P.n; ++i)
        m[e.perm[i]][i] = std::polar(1.0, two_pi * e.col[i] / P.r);
    return m;
}

inline CMat matmul(const CMat& a, const CMat& b)
{
    size_t n = a.size();
    CMat c(n, std::vector<std::complex<double>>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j)
                c[i][j] += a[i][k] * b[k][j];
    return c;
}

// Reads a monomial matrix back into an element (then canonicalized for P).
inline Element from_matrix(const GroupParams& P, const CMat& m)
{
    const double two_pi = 6.283185307179586;
    std::vector<int> perm(P.n);
    std::vector<int64_t> cols(P.n);
    for (int i = 0; i < P.n; ++i)
        for (int row = 0; row < P.n; ++row)
            if (std::abs(m[row][i]) > 0.5) {
                perm[i] = row;
                double ang = std::arg(m[row][i]);
                cols[i] = std::llround(ang / two_pi * P.r);
            }
    return prg::make_element(P, perm, cols);
}

// Element count reached from the standard generators by right multiplication.
inline size_t closure_size(const GroupParams& P)
{
    std::unordered_set<Element, prg::ElementHash> seen;
    std::vector<Element> queue{prg::identity(P)};
    seen.insert(queue[0]);
    auto gens = prg::standard_generators(P);
    for (size_t h = 0; h < queue.size(); ++h)
        for (const auto& g : gens) {
            Element y = prg::multiply(P, queue[h], g);
            if (seen.insert(y).second)
                queue.push_back(y);
        }
    return seen.size();
}

} // namespace testutil
