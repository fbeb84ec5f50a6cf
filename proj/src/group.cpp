#include "prg/group.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "prg/config.hpp"
#include "prg/errors.hpp"
#include "prg/numtheory.hpp"

namespace prg {

std::string GroupParams::str() const
{
    return std::to_string(r) + "," + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(n);
}

bool is_valid_tuple(int r, int p, int q, int n)
{
    if (r <= 0 || p <= 0 || q <= 0 || n <= 0)
        return false;
    return r % p == 0 && r % q == 0 && (int64_t(r) * n) % (int64_t(p) * q) == 0;
}

GroupParams make_group(int r, int p, int q, int n)
{
    if (r <= 0 || p <= 0 || q <= 0 || n <= 0)
        throw InvalidParameters("group parameters must be positive");
    if (n > kMaxRank)
        throw InvalidParameters("rank above " + std::to_string(kMaxRank) + " unsupported");
    if (r % p)
        throw DivisibilityError("p does not divide r");
    if (r % q)
        throw DivisibilityError("q does not divide r");
    if ((int64_t(r) * n) % (int64_t(p) * q))
        throw DivisibilityError("pq does not divide rn");
    GroupParams P;
    P.r = r, P.p = p, P.q = q, P.n = n;
    P.d0 = int(nt::gcd(p, q, n));
    // r^n n!/(pq) may overflow for large inputs; saturate.
    long double approx = std::pow((long double)r, n) * (long double)nt::factorial(n) / ((long double)p * q);
    if (approx > 1.8e19L) {
        P.order = UINT64_MAX;
    } else {
        unsigned __int128 o = 1;
        for (int i = 0; i < n; ++i)
            o *= unsigned(r);
        o *= uint64_t(nt::factorial(n));
        P.order = uint64_t(o / (unsigned(p) * unsigned(q)));
    }
    return P;
}

GroupParams parse_group(const std::string& s)
{
    std::vector<int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stoi(tok));
        } catch (...) {
            throw ParseError("bad group tuple '" + s + "'");
        }
    }
    if (v.size() != 4)
        throw ParseError("group tuple must be r,p,q,n");
    return make_group(v[0], v[1], v[2], v[3]);
}

bool Element::operator==(const Element& o) const
{
    if (n != o.n)
        return false;
    for (int i = 0; i < n; ++i)
        if (perm[i] != o.perm[i] || col[i] != o.col[i])
            return false;
    return true;
}

bool Element::operator<(const Element& o) const
{
    if (n != o.n)
        return n < o.n;
    for (int i = 0; i < n; ++i)
        if (perm[i] != o.perm[i])
            return perm[i] < o.perm[i];
    for (int i = 0; i < n; ++i)
        if (col[i] != o.col[i])
            return col[i] < o.col[i];
    return false;
}

size_t ElementHash::operator()(const Element& e) const
{
    uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < e.n; ++i) {
        h = (h ^ e.perm[i]) * 1099511628211ull;
        h = (h ^ uint32_t(e.col[i])) * 1099511628211ull;
    }
    return size_t(h);
}

void canonicalize(const GroupParams& P, Element& e)
{
    const int r = P.r, step = P.r / P.q;
    for (int i = 0; i < e.n; ++i) {
        int v = e.col[i] % r;
        e.col[i] = v < 0 ? v + r : v;
    }
    if (P.q == 1 || e.n == 0)
        return;
    // Lexicographic minimum over x + k(r/q)(1,...,1) is the shift with x_1 in [0, r/q).
    int shift = e.col[0] - e.col[0] % step;
    if (shift == 0)
        return;
    for (int i = 0; i < e.n; ++i) {
        int v = e.col[i] - shift;
        e.col[i] = v < 0 ? v + r : v;
    }
}

Element identity(const GroupParams& P)
{
    Element e;
    e.n = uint8_t(P.n);
    for (int i = 0; i < P.n; ++i)
        e.perm[i] = uint8_t(i);
    return e;
}

static void check_same(const GroupParams& P, const Element& a)
{
    if (a.n != P.n)
        throw ParamMismatch("element rank " + std::to_string(a.n) + " does not match group " + P.str());
}

Element multiply(const GroupParams& P, const Element& a, const Element& b)
{
    check_same(P, a);
    check_same(P, b);
    Element c;
    c.n = a.n;
    const int r = P.r;
    for (int i = 0; i < a.n; ++i) {
        c.perm[i] = a.perm[b.perm[i]];
        int v = a.col[b.perm[i]] + b.col[i];
        c.col[i] = v >= r ? v - r : v;
    }
    canonicalize(P, c);
    return c;
}

Element inverse(const GroupParams& P, const Element& a)
{
    check_same(P, a);
    // (π,x)^{-1} = (π^{-1}, y) with y_j = -x_{π^{-1}(j)}.
    Element c;
    c.n = a.n;
    for (int i = 0; i < a.n; ++i) {
        c.perm[a.perm[i]] = uint8_t(i);
        c.col[a.perm[i]] = a.col[i] ? P.r - a.col[i] : 0;
    }
    canonicalize(P, c);
    return c;
}

Element power(const GroupParams& P, const Element& a, int64_t k)
{
    Element base = k < 0 ? inverse(P, a) : a;
    if (k < 0)
        k = -k;
    Element acc = identity(P);
    while (k) {
        if (k & 1)
            acc = multiply(P, acc, base);
        base = multiply(P, base, base);
        k >>= 1;
    }
    return acc;
}

uint64_t element_order(const GroupParams& P, const Element& a)
{
    // Order of π times order of the resulting diagonal element.
    std::array<bool, kMaxRank> seen{};
    uint64_t l = 1;
    for (int i = 0; i < a.n; ++i) {
        if (seen[i])
            continue;
        uint64_t len = 0;
        for (int j = i; !seen[j]; j = a.perm[j]) {
            seen[j] = true;
            ++len;
        }
        l = uint64_t(nt::lcm(int64_t(l), int64_t(len)));
    }
    Element d = power(P, a, int64_t(l));
    // d is diagonal; its order divides r.
    Element e = identity(P);
    uint64_t m = 1;
    Element cur = d;
    while (!(cur == e)) {
        cur = multiply(P, cur, d);
        ++m;
    }
    return l * m;
}

Element tau(const GroupParams& P, const Element& a)
{
    Element c = a;
    for (int i = 0; i < a.n; ++i)
        c.col[i] = a.col[i] ? P.r - a.col[i] : 0;
    canonicalize(P, c);
    return c;
}

Element conjugate(const GroupParams& P, const Element& h, const Element& g)
{
    return multiply(P, multiply(P, h, g), inverse(P, h));
}

int64_t delta_modulus(const GroupParams& P)
{
    return nt::gcd(P.r, int64_t(P.n) * (P.r / P.q));
}

int64_t delta_lift(const Element& a)
{
    int64_t s = 0;
    for (int i = 0; i < a.n; ++i)
        s += a.col[i];
    return s;
}

int64_t delta(const GroupParams& P, const Element& a)
{
    return delta_lift(a) % delta_modulus(P);
}

std::vector<int> proj(const Element& a)
{
    return std::vector<int>(a.perm.begin(), a.perm.begin() + a.n);
}

bool is_member(const GroupParams& P, const Element& a)
{
    if (a.n != P.n)
        return false;
    std::array<bool, kMaxRank> seen{};
    for (int i = 0; i < a.n; ++i) {
        if (a.perm[i] >= a.n || seen[a.perm[i]])
            return false;
        seen[a.perm[i]] = true;
        if (a.col[i] < 0 || a.col[i] >= P.r)
            return false;
    }
    return delta_lift(a) % P.p == 0;
}

bool is_identity_perm(const Element& a)
{
    for (int i = 0; i < a.n; ++i)
        if (a.perm[i] != i)
            return false;
    return true;
}

Element make_element(const GroupParams& P, const std::vector<int>& perm0, const std::vector<int64_t>& colors)
{
    if (int(perm0.size()) != P.n || int(colors.size()) != P.n)
        throw ParamMismatch("element length does not match rank " + std::to_string(P.n));
    Element e;
    e.n = uint8_t(P.n);
    for (int i = 0; i < P.n; ++i) {
        e.perm[i] = uint8_t(perm0[i]);
        e.col[i] = int32_t(nt::mod(colors[i], P.r));
    }
    canonicalize(P, e);
    return e;
}

Element diag(const GroupParams& P, const std::vector<int64_t>& colors)
{
    Element e = identity(P);
    for (int i = 0; i < P.n; ++i)
        e.col[i] = int32_t(nt::mod(colors.at(i), P.r));
    canonicalize(P, e);
    return e;
}

Element perm_element(const GroupParams& P, const std::vector<int>& perm0)
{
    Element e = identity(P);
    for (int i = 0; i < P.n; ++i)
        e.perm[i] = uint8_t(perm0.at(i));
    return e;
}

Element gen_simple(const GroupParams& P, int i)
{
    Element e = identity(P);
    std::swap(e.perm[i - 1], e.perm[i]);
    return e;
}

Element gen_s(const GroupParams& P)
{
    std::vector<int64_t> x(P.n, 0);
    x[0] = 1;
    if (P.n >= 2)
        x[1] = -1;
    return diag(P, x);
}

Element gen_t_pow(const GroupParams& P, int64_t k)
{
    std::vector<int64_t> x(P.n, 0);
    x[0] = k;
    return diag(P, x);
}

Element gen_c(const GroupParams& P, int64_t k)
{
    return diag(P, std::vector<int64_t>(P.n, k));
}

std::vector<Element> standard_generators(const GroupParams& P)
{
    std::vector<Element> gens;
    const Element id = identity(P);
    auto add = [&](const Element& g) {
        if (!(g == id) && std::find(gens.begin(), gens.end(), g) == gens.end())
            gens.push_back(g);
    };
    for (int i = 1; i < P.n; ++i)
        add(gen_simple(P, i));
    if (P.n >= 2)
        add(gen_s(P));
    add(gen_t_pow(P, P.p));
    return gens;
}

Element reparam(const GroupParams& to, const Element& e)
{
    if (e.n != to.n)
        throw ParamMismatch("reparam: rank mismatch");
    Element c = e;
    canonicalize(to, c);
    return c;
}

Element parse_element(const GroupParams& P, const std::string& s)
{
    auto open = s.find('('), bar = s.find('|'), close = s.find(')');
    if (open == std::string::npos || bar == std::string::npos || close == std::string::npos || !(open < bar && bar < close))
        throw ParseError("element must look like (p1 ... pn | c1 ... cn)");
    std::vector<int> perm;
    std::vector<int64_t> cols;
    {
        std::stringstream ss(s.substr(open + 1, bar - open - 1));
        long v;
        while (ss >> v)
            perm.push_back(int(v - 1));
        if (!ss.eof())
            throw ParseError("bad permutation in '" + s + "'");
    }
    {
        std::stringstream ss(s.substr(bar + 1, close - bar - 1));
        long v;
        while (ss >> v)
            cols.push_back(v);
        if (!ss.eof())
            throw ParseError("bad colors in '" + s + "'");
    }
    if (int(perm.size()) != P.n || int(cols.size()) != P.n)
        throw ParseError("element length does not match rank " + std::to_string(P.n));
    std::vector<bool> seen(P.n, false);
    for (int v : perm) {
        if (v < 0 || v >= P.n || seen[v])
            throw ParseError("not a permutation: '" + s + "'");
        seen[v] = true;
    }
    Element e = make_element(P, perm, cols);
    if (!is_member(P, e))
        throw InvalidParameters("color sum is not divisible by p");
    return e;
}

std::string format_element(const GroupParams& P, const Element& e)
{
    (void)P;
    std::string out = "(";
    for (int i = 0; i < e.n; ++i)
        out += (i ? " " : "") + std::to_string(e.perm[i] + 1);
    out += " |";
    for (int i = 0; i < e.n; ++i)
        out += " " + std::to_string(e.col[i]);
    out += ")";
    return out;
}

uint64_t color_slots(const GroupParams& P)
{
    uint64_t s = 1;
    for (int i = 0; i < P.n; ++i)
        s *= uint64_t(P.r);
    return s / (uint64_t(P.p) * P.q);
}

uint64_t lehmer_rank(const uint8_t* perm, int n)
{
    uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (perm[j] < perm[i])
                ++smaller;
        rank = rank * uint64_t(n - i) + uint64_t(smaller);
    }
    return rank;
}

void lehmer_unrank(uint64_t rank, int n, uint8_t* perm)
{
    std::array<int, kMaxRank> digits{};
    for (int i = n - 1; i >= 0; --i) {
        digits[i] = int(rank % uint64_t(n - i));
        rank /= uint64_t(n - i);
    }
    std::array<uint8_t, kMaxRank> pool{};
    for (int i = 0; i < n; ++i)
        pool[i] = uint8_t(i);
    int left = n;
    for (int i = 0; i < n; ++i) {
        int d = digits[i];
        perm[i] = pool[d];
        for (int j = d; j < left - 1; ++j)
            pool[j] = pool[j + 1];
        --left;
    }
}

uint64_t index_of(const GroupParams& P, const Element& e)
{
    const int n = P.n;
    const uint64_t r = uint64_t(P.r);
    uint64_t slot;
    if (n == 1) {
        slot = uint64_t(e.col[0] / P.p);
    } else {
        slot = uint64_t(e.col[0]);
        for (int i = 1; i < n - 1; ++i)
            slot = slot * r + uint64_t(e.col[i]);
        slot = slot * uint64_t(P.r / P.p) + uint64_t(e.col[n - 1] / P.p);
    }
    return lehmer_rank(e.perm.data(), n) * color_slots(P) + slot;
}

Element element_at(const GroupParams& P, uint64_t idx)
{
    const int n = P.n;
    const uint64_t cs = color_slots(P);
    Element e;
    e.n = uint8_t(n);
    lehmer_unrank(idx / cs, n, e.perm.data());
    uint64_t slot = idx % cs;
    if (n == 1) {
        e.col[0] = int32_t(slot * uint64_t(P.p));
        return e;
    }
    const uint64_t rp = uint64_t(P.r / P.p);
    uint64_t j = slot % rp;
    slot /= rp;
    int64_t sum = 0;
    for (int i = n - 2; i >= 1; --i) {
        e.col[i] = int32_t(slot % uint64_t(P.r));
        slot /= uint64_t(P.r);
        sum += e.col[i];
    }
    e.col[0] = int32_t(slot);
    sum += e.col[0];
    int64_t base = nt::mod(-sum, P.p);
    e.col[n - 1] = int32_t(base + int64_t(P.p) * int64_t(j));
    return e;
}

void for_each_element(const GroupParams& P, const std::function<void(uint64_t, const Element&)>& f)
{
    if (P.order > caps().enumeration)
        throw CapExceeded("order " + std::to_string(P.order) + " of G(" + P.str() + ") exceeds enumeration cap " +
                          std::to_string(caps().enumeration));
    for (uint64_t i = 0; i < P.order; ++i)
        f(i, element_at(P, i));
}

std::vector<Element> enumerate(const GroupParams& P)
{
    std::vector<Element> out;
    out.reserve(P.order <= caps().enumeration ? P.order : 0);
    for_each_element(P, [&](uint64_t, const Element& e) { out.push_back(e); });
    return out;
}

std::vector<Element> subgroup_N(const GroupParams& P)
{
    const uint64_t cs = color_slots(P);
    if (cs > caps().enumeration)
        throw CapExceeded("diagonal subgroup exceeds enumeration cap");
    std::vector<Element> out;
    out.reserve(cs);
    for (uint64_t i = 0; i < cs; ++i)
        out.push_back(element_at(P, i));
    return out;
}

std::vector<Element> subgroup_C(const GroupParams& P)
{
    // c^i lies in G(r,p,n) iff p | n i.
    const int64_t step = P.p / nt::gcd(P.p, P.n);
    std::vector<Element> out;
    for (int64_t i = 0; i < P.r; i += step)
        out.push_back(gen_c(P, i));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

uint64_t center_scalar_order(const GroupParams& P)
{
    return uint64_t(int64_t(P.r) * nt::gcd(P.p, P.n) / (int64_t(P.p) * P.q));
}

} // namespace prg
