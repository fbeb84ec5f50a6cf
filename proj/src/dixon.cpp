#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>

#include <Eigen/Eigenvalues>

#include "prg/character.hpp"
#include "prg/config.hpp"
#include "prg/errors.hpp"
#include "prg/kernels.hpp"

namespace prg {

uint64_t CharacterTable::degree_sum() const
{
    uint64_t s = 0;
    for (auto d : degrees)
        s += uint64_t(d);
    return s;
}

TableHealth check_table(const CharacterTable& T)
{
    TableHealth h;
    const int k = int(T.count());
    const double N = double(T.order);
    // U_{χ,l} = χ_l sqrt(|C_l|/|G|) is unitary exactly when both relations hold.
    Eigen::MatrixXcd U(k, k);
    for (int l = 0; l < k; ++l) {
        double w = std::sqrt(double(T.classes.sizes[l]) / N);
        U.col(l) = T.values.col(l) * w;
    }
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(k, k);
    h.row_orthogonality = (U * U.adjoint() - I).cwiseAbs().maxCoeff();
    h.column_orthogonality = (U.adjoint() * U - I).cwiseAbs().maxCoeff();
    unsigned __int128 sq = 0;
    for (auto d : T.degrees)
        sq += (unsigned __int128)(d) * uint64_t(d);
    h.degrees_square_sum = sq == T.order;
    return h;
}

namespace {

using Mat = Eigen::MatrixXcd;

// Splits the columns of V (an orthonormal basis of a joint eigenspace) using the
// remaining matrices in turn. Returns false when a cluster cannot be resolved.
bool refine(const std::vector<Mat>& Hs, size_t level, const Mat& V, std::vector<Eigen::VectorXcd>& out)
{
    if (V.cols() == 1) {
        out.push_back(V.col(0));
        return true;
    }
    if (level >= Hs.size())
        return false;
    Mat small = V.adjoint() * Hs[level] * V;
    small = (small + small.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Mat> es(small);
    if (es.info() != Eigen::Success)
        return false;
    const auto& ev = es.eigenvalues();
    const double scale = 1.0 + ev.cwiseAbs().maxCoeff();
    const Mat W = V * es.eigenvectors();
    int start = 0;
    for (int i = 1; i <= int(ev.size()); ++i) {
        if (i == int(ev.size()) || ev[i] - ev[i - 1] > 1e-7 * scale) {
            if (!refine(Hs, level + 1, W.middleCols(start, i - start), out))
                return false;
            start = i;
        }
    }
    return true;
}

bool dixon_attempt(const FiniteGroup& G, const ClassStructure& cs, uint64_t seed, CharacterTable& T)
{
    const int k = int(cs.count());
    const double N = double(G.N);
    constexpr int kMats = 3;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<std::vector<cplx>> weights(kMats, std::vector<cplx>(k));
    for (int m = 0; m < kMats; ++m) {
        std::vector<cplx> c(k);
        for (auto& v : c)
            v = cplx(U(rng), U(rng));
        // w_i = c_i + conj(c_{i*}) makes the similarity-transformed matrix Hermitian.
        for (int i = 0; i < k; ++i)
            weights[m][i] = c[i] + std::conj(c[cs.inv_class[i]]);
    }
    std::vector<Mat> B = class_matrix_combinations(G, cs, weights);
    std::vector<double> sq(k);
    for (int l = 0; l < k; ++l)
        sq[l] = std::sqrt(double(cs.sizes[l]));
    std::vector<Mat> Hs;
    for (auto& b : B) {
        Mat h(k, k);
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l)
                h(j, l) = b(j, l) * (sq[l] / sq[j]);
        Hs.push_back((h + h.adjoint()) * 0.5);
    }
    std::vector<Eigen::VectorXcd> vecs;
    if (!refine(Hs, 0, Mat::Identity(k, k), vecs) || int(vecs.size()) != k)
        return false;

    T.order = G.N;
    T.classes = cs;
    T.seed = seed;
    T.degrees.assign(k, 0);
    T.values.resize(k, k);
    for (int i = 0; i < k; ++i) {
        const auto& e = vecs[i];
        double dr = std::sqrt(N) * std::abs(e[0]);
        double d = std::round(dr);
        if (d < 1 || std::abs(dr - d) > 1e-3)
            return false;
        T.degrees[i] = int64_t(d);
        for (int l = 0; l < k; ++l)
            T.values(i, l) = d * e[l] / (e[0] * sq[l]);
    }
    // Canonical row order: degree, principal character first, then rounded values.
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i)
        order[i] = i;
    auto rounded = [&](int i, int l) {
        auto v = T.values(i, l);
        return std::make_pair(std::llround(v.real() * 1e6), std::llround(v.imag() * 1e6));
    };
    auto principal = [&](int i) {
        for (int l = 0; l < k; ++l)
            if (std::abs(T.values(i, l) - 1.0) > 1e-6)
                return false;
        return true;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (T.degrees[a] != T.degrees[b])
            return T.degrees[a] < T.degrees[b];
        bool pa = principal(a), pb = principal(b);
        if (pa != pb)
            return pa;
        for (int l = 0; l < k; ++l) {
            auto ra = rounded(a, l), rb = rounded(b, l);
            if (ra != rb)
                return ra < rb;
        }
        return false;
    });
    CharacterTable sorted = T;
    for (int i = 0; i < k; ++i) {
        sorted.degrees[i] = T.degrees[order[i]];
        sorted.values.row(i) = T.values.row(order[i]);
    }
    T = std::move(sorted);
    return check_table(T).ok(1e-6);
}

struct Cache {
    std::shared_mutex mu;
    std::map<std::string, std::shared_ptr<const CharacterTable>> tables;
    std::mutex log_mu;
    std::vector<TableRecord> log;
};

Cache& cache()
{
    static Cache c;
    return c;
}

} // namespace

CharacterTable dixon_table(const FiniteGroup& G, const ClassStructure& cs, uint64_t seed)
{
    CharacterTable T;
    for (int attempt = 0; attempt < 4; ++attempt)
        if (dixon_attempt(G, cs, seed + 7919 * uint64_t(attempt), T))
            return T;
    throw NumericalFailure("character table: eigenspaces not separated after 4 seeds (|G|=" + std::to_string(G.N) +
                           ", classes=" + std::to_string(cs.count()) + ")");
}

std::shared_ptr<const CharacterTable> character_table(const GroupParams& P)
{
    auto& C = cache();
    const std::string key = P.str();
    {
        std::shared_lock lock(C.mu);
        auto it = C.tables.find(key);
        if (it != C.tables.end())
            return it->second;
    }
    if (P.order > caps().table)
        throw CapExceeded("order " + std::to_string(P.order) + " of G(" + key + ") exceeds character-table cap " +
                          std::to_string(caps().table));
    auto EG = enumerate_group(P);
    auto FG = EG.as_finite_group();
    auto cs = compute_classes(FG);
    if (cs.count() > caps().table_classes)
        throw CapExceeded("G(" + key + ") has " + std::to_string(cs.count()) + " classes, above the cap " +
                          std::to_string(caps().table_classes));
    auto T = std::make_shared<const CharacterTable>(dixon_table(FG, cs));
    {
        std::lock_guard lock(C.log_mu);
        C.log.push_back({"G(" + key + ")", T->order, T->count(), check_table(*T)});
    }
    std::unique_lock lock(C.mu);
    auto [it, inserted] = C.tables.emplace(key, T);
    return it->second;
}

std::vector<TableRecord> table_log()
{
    auto& C = cache();
    std::lock_guard lock(C.log_mu);
    return C.log;
}

} // namespace prg
