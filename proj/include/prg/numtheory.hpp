#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace prg::nt {

inline int64_t gcd(int64_t a, int64_t b) { return std::gcd(a, b); }
inline int64_t gcd(int64_t a, int64_t b, int64_t c) { return std::gcd(std::gcd(a, b), c); }
inline int64_t lcm(int64_t a, int64_t b) { return std::lcm(a, b); }

// Nonnegative residue.
inline int64_t mod(int64_t a, int64_t m)
{
    int64_t v = a % m;
    return v < 0 ? v + m : v;
}

// Prime factorization as (prime, exponent) pairs, ascending.
std::vector<std::pair<int64_t, int>> factorize(int64_t n);

// Exponent of prime pr in n (n > 0).
int valuation(int64_t n, int64_t pr);

std::vector<int64_t> divisors(int64_t n);

int64_t ipow(int64_t b, int e);

// Inverse of a modulo m; requires gcd(a,m)=1.
int64_t inverse_mod(int64_t a, int64_t m);

// Solves x ≡ a_i (mod m_i) for pairwise coprime moduli; returns (x, M) with 0 ≤ x < M.
std::pair<int64_t, int64_t> crt(const std::vector<std::pair<int64_t, int64_t>>& congruences);

// Largest divisor of n composed of primes dividing `primes_of`.
int64_t part_supported_on(int64_t n, int64_t primes_of);

int64_t factorial(int n);

} // namespace prg::nt
