#include "prg/kernels.hpp"

#include <atomic>

#include "prg/config.hpp"
#include "prg/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace prg {

namespace {

void class_matrix_column(const FiniteGroup& G, const ClassStructure& cs,
                         const std::vector<std::vector<std::complex<double>>>& w, std::vector<Eigen::MatrixXcd>& B,
                         uint32_t l)
{
    const uint32_t gl = cs.reps[l];
    for (uint32_t x = 0; x < G.N; ++x) {
        const uint32_t j = cs.cls[G.mul(G.inv[x], gl)];
        const uint32_t cx = cs.cls[x];
        for (size_t m = 0; m < w.size(); ++m)
            B[m](j, l) += w[m][cx];
    }
}

std::vector<Eigen::MatrixXcd> zero_mats(size_t count, int k)
{
    return std::vector<Eigen::MatrixXcd>(count, Eigen::MatrixXcd::Zero(k, k));
}

} // namespace

std::vector<Eigen::MatrixXcd> class_matrix_combinations_serial(const FiniteGroup& G, const ClassStructure& cs,
                                                               const std::vector<std::vector<std::complex<double>>>& w)
{
    auto B = zero_mats(w.size(), int(cs.count()));
    for (uint32_t l = 0; l < cs.count(); ++l)
        class_matrix_column(G, cs, w, B, l);
    return B;
}

std::vector<Eigen::MatrixXcd> class_matrix_combinations_omp(const FiniteGroup& G, const ClassStructure& cs,
                                                            const std::vector<std::vector<std::complex<double>>>& w)
{
    auto B = zero_mats(w.size(), int(cs.count()));
    const int64_t k = cs.count();
    // Each column l is written by exactly one iteration.
#pragma omp parallel for schedule(dynamic, 1)
    for (int64_t l = 0; l < k; ++l)
        class_matrix_column(G, cs, w, B, uint32_t(l));
    return B;
}

bool is_tau_involution(const GroupParams& P, const Element& w)
{
    // ω τ(ω) = (π², z) with z_i = x_{π(i)} - x_i; identity iff π² = 1 and z ∈ (r/q)·Z·(1,...,1).
    const int n = P.n, r = P.r, step = P.r / P.q;
    int common = -1;
    for (int i = 0; i < n; ++i) {
        if (w.perm[w.perm[i]] != i)
            return false;
        int z = w.col[w.perm[i]] - w.col[i];
        if (z < 0)
            z += r;
        if (common < 0)
            common = z;
        else if (z != common)
            return false;
    }
    return common % step == 0;
}

uint64_t count_tau_involutions_serial(const GroupParams& P)
{
    uint64_t count = 0;
    for (uint64_t i = 0; i < P.order; ++i)
        count += is_tau_involution(P, element_at(P, i));
    return count;
}

uint64_t count_tau_involutions_omp(const GroupParams& P)
{
    uint64_t count = 0;
    const int64_t N = int64_t(P.order);
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (int64_t i = 0; i < N; ++i)
        count += is_tau_involution(P, element_at(P, uint64_t(i)));
    return count;
}

uint64_t power_image_count_serial(const GroupParams& P, int64_t e)
{
    if (P.order > caps().enumeration)
        throw CapExceeded("power_image_count: order exceeds enumeration cap");
    std::vector<uint8_t> hit(P.order, 0);
    for (uint64_t i = 0; i < P.order; ++i)
        hit[index_of(P, power(P, element_at(P, i), e))] = 1;
    uint64_t c = 0;
    for (auto h : hit)
        c += h;
    return c;
}

uint64_t power_image_count_omp(const GroupParams& P, int64_t e)
{
    if (P.order > caps().enumeration)
        throw CapExceeded("power_image_count: order exceeds enumeration cap");
    std::vector<std::atomic<uint8_t>> hit(P.order);
    const int64_t N = int64_t(P.order);
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < N; ++i)
        hit[index_of(P, power(P, element_at(P, uint64_t(i)), e))].store(1, std::memory_order_relaxed);
    uint64_t c = 0;
    for (auto& h : hit)
        c += h.load(std::memory_order_relaxed);
    return c;
}

} // namespace prg
