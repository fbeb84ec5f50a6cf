#pragma once

// Hot loops with an OpenMP version and a serial reference version each.
// The plain names dispatch to the OpenMP version.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "prg/finite_group.hpp"
#include "prg/group.hpp"

namespace prg {

// For each weight vector w: B_{jl} = Σ_x w_{cls(x)} [cls(x^{-1} g_l) = j].
std::vector<Eigen::MatrixXcd> class_matrix_combinations_serial(const FiniteGroup& G, const ClassStructure& cs,
                                                               const std::vector<std::vector<std::complex<double>>>& w);
std::vector<Eigen::MatrixXcd> class_matrix_combinations_omp(const FiniteGroup& G, const ClassStructure& cs,
                                                            const std::vector<std::vector<std::complex<double>>>& w);
inline std::vector<Eigen::MatrixXcd> class_matrix_combinations(const FiniteGroup& G, const ClassStructure& cs,
                                                               const std::vector<std::vector<std::complex<double>>>& w)
{
    return class_matrix_combinations_omp(G, cs, w);
}

// |{ω ∈ G : ω τ(ω) = 1}| by a scan over all elements (no enumeration cap).
uint64_t count_tau_involutions_serial(const GroupParams& P);
uint64_t count_tau_involutions_omp(const GroupParams& P);
inline uint64_t count_tau_involutions(const GroupParams& P) { return count_tau_involutions_omp(P); }

// |{g^e : g ∈ G}|.
uint64_t power_image_count_serial(const GroupParams& P, int64_t e);
uint64_t power_image_count_omp(const GroupParams& P, int64_t e);
inline uint64_t power_image_count(const GroupParams& P, int64_t e) { return power_image_count_omp(P, e); }

// Twisted-involution test for ν = τ without building the product.
bool is_tau_involution(const GroupParams& P, const Element& w);

} // namespace prg
