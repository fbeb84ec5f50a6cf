#include "prg/numtheory.hpp"

#include <algorithm>

#include "prg/errors.hpp"

namespace prg::nt {

std::vector<std::pair<int64_t, int>> factorize(int64_t n)
{
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d)
            continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

int valuation(int64_t n, int64_t pr)
{
    int e = 0;
    while (n % pr == 0) {
        n /= pr;
        ++e;
    }
    return e;
}

std::vector<int64_t> divisors(int64_t n)
{
    std::vector<int64_t> out;
    for (int64_t d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n)
                out.push_back(n / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

int64_t ipow(int64_t b, int e)
{
    int64_t v = 1;
    while (e-- > 0)
        v *= b;
    return v;
}

int64_t inverse_mod(int64_t a, int64_t m)
{
    if (m == 1)
        return 0;
    int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        int64_t t = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - t * a1);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    if (g != 1)
        throw NoSolution("inverse_mod: not a unit");
    return mod(x, m);
}

std::pair<int64_t, int64_t> crt(const std::vector<std::pair<int64_t, int64_t>>& congruences)
{
    int64_t x = 0, M = 1;
    for (auto [a, m] : congruences) {
        if (gcd(M, m) != 1)
            throw NoSolution("crt: moduli not coprime");
        // x + M*t ≡ a (mod m)
        int64_t t = mod((a - x) % m * inverse_mod(M % m, m), m);
        x += M * t;
        M *= m;
        x = mod(x, M);
    }
    return {x, M};
}

int64_t part_supported_on(int64_t n, int64_t primes_of)
{
    int64_t out = 1;
    for (auto [pr, e] : factorize(n))
        if (primes_of % pr == 0)
            out *= ipow(pr, e);
    return out;
}

int64_t factorial(int n)
{
    int64_t v = 1;
    for (int i = 2; i <= n; ++i)
        v *= i;
    return v;
}

} // namespace prg::nt
