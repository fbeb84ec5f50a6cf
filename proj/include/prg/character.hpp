#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "prg/finite_group.hpp"
#include "prg/group.hpp"

namespace prg {

using cplx = std::complex<double>;

struct CharacterTable {
    uint64_t order = 1;
    ClassStructure classes;
    std::vector<int64_t> degrees;
    Eigen::MatrixXcd values;  // rows irreducibles, columns classes
    uint64_t seed = 0;        // seed that produced the table

    uint32_t count() const { return uint32_t(degrees.size()); }
    uint64_t degree_sum() const;
};

struct TableHealth {
    double row_orthogonality = 0;     // max |<χ_i,χ_j> - δ_ij|
    double column_orthogonality = 0;  // max deviation of the second relation
    bool degrees_square_sum = false;  // Σ d² == |G| exactly
    bool ok(double tol = 1e-6) const { return degrees_square_sum && row_orthogonality < tol && column_orthogonality < tol; }
};

TableHealth check_table(const CharacterTable& T);

// Class-matrix eigenvector method with random recombination; deterministic for a seed.
// Retries a few seeds, then throws NumericalFailure.
CharacterTable dixon_table(const FiniteGroup& G, const ClassStructure& cs, uint64_t seed = 1);

// Cached table of G(r,p,q,n). Caps: order and class count.
std::shared_ptr<const CharacterTable> character_table(const GroupParams& P);

// Every table produced by character_table, with its health at creation time.
struct TableRecord {
    std::string label;
    uint64_t order;
    uint32_t classes;
    TableHealth health;
};
std::vector<TableRecord> table_log();

// Values of all irreducibles at group elements.
class IrrProvider {
public:
    virtual ~IrrProvider() = default;
    virtual const GroupParams& params() const = 0;
    virtual size_t count() const = 0;
    virtual int64_t degree(size_t i) const = 0;
    virtual void values_at(const Element& g, cplx* out) const = 0;
    uint64_t degree_sum() const;
};

class TableIrr : public IrrProvider {
public:
    TableIrr(GroupParams P, std::shared_ptr<const CharacterTable> T) : P_(P), T_(std::move(T)) {}
    const GroupParams& params() const override { return P_; }
    size_t count() const override { return T_->count(); }
    int64_t degree(size_t i) const override { return T_->degrees[i]; }
    void values_at(const Element& g, cplx* out) const override;
    const CharacterTable& table() const { return *T_; }

private:
    GroupParams P_;
    std::shared_ptr<const CharacterTable> T_;
};

// Exact irreducibles of G(r,p,q,n) for n ≤ 2 via Clifford theory over the diagonal subgroup
// A = N(r,p,q,2) with complement S_2.
class Rank2Irr : public IrrProvider {
public:
    explicit Rank2Irr(const GroupParams& P);
    const GroupParams& params() const override { return P_; }
    size_t count() const override { return reps_.size(); }
    int64_t degree(size_t i) const override { return reps_[i].deg; }
    void values_at(const Element& g, cplx* out) const override;

    struct Irr {
        int64_t y1, y2;  // character θ_y of A
        int deg;         // 2 for an induced pair, 1 for an extension (n=2) or n=1
        int eps;         // sign on the swap for extensions
    };
    const std::vector<Irr>& irreducibles() const { return reps_; }

private:
    GroupParams P_;
    std::vector<Irr> reps_;
    std::vector<cplx> zeta_;
};

// Rank-2 providers for n ≤ 2, table-backed otherwise.
std::unique_ptr<IrrProvider> irr_provider(const GroupParams& P);

// Σψ(1) by Clifford theory for any n: Σ_{θ∈Â} Σ_{φ∈Irr(Stab_{S_n} θ)} φ(1).
// Also returns the number of irreducibles.
struct CliffordCount {
    uint64_t degree_sum = 0;
    uint64_t irr_count = 0;
};
CliffordCount clifford_count(const GroupParams& P);

uint64_t sum_of_degrees(const GroupParams& P);

// Closed-form rank-2 characters on G(r,p,q,2), p ∈ {1,2}.
enum class Rank2Kind { Chi, Lambda, Nu };
std::function<cplx(const Element&)> rank2_character(const GroupParams& P, Rank2Kind kind, int64_t a, int64_t b);

// Class functions live on the classes of a table.
using ClassFunction = std::vector<cplx>;

// Values of f on the class representatives of T, the table of G(r,p,q,n) = P.
ClassFunction tabulate(const GroupParams& P, const CharacterTable& T, const std::function<cplx(const Element&)>& f);
cplx inner_product(const CharacterTable& T, const ClassFunction& a, const ClassFunction& b);
// Ind_H^G f, with H a list of element indices in the group underlying T and f given on H.
ClassFunction induce(const CharacterTable& T, const FiniteGroup& G, const std::vector<uint32_t>& H,
                     const std::vector<cplx>& f);
std::vector<cplx> restrict_to(const CharacterTable& T, const ClassFunction& f, const std::vector<uint32_t>& H);

// Linear characters of a subgroup H ⊆ G (sorted indices). Values are ζ_D^{exps[c][i]} at H[i].
struct LinearChars {
    std::vector<uint32_t> H;
    int64_t D = 1;  // |H/[H,H]|
    std::vector<std::vector<int32_t>> exps;
    size_t count() const { return exps.size(); }
    cplx value(size_t c, size_t i) const;
};
LinearChars linear_characters(const FiniteGroup& G, const std::vector<uint32_t>& H);

// Multiplicities of each irreducible in Ind_H^G λ, where H is a list of elements and
// lam their λ-values. Throws NumericalFailure if a multiplicity is not near an integer.
std::vector<int64_t> induced_multiplicities(const IrrProvider& irr, const std::vector<Element>& H,
                                            const std::vector<cplx>& lam);

} // namespace prg
