#pragma once

#include "exseq/arith.hpp"

#include <string>
#include <vector>

namespace exseq {

using DivisorClass = IVec;
using QDivisorClass = QVec;
using IMatrix = std::vector<std::vector<Int>>;

// CH^1 of a surface as an integral lattice with intersection form and canonical class.
struct IntersectionLattice {
    int rho = 0;
    IMatrix gram;
    DivisorClass K;

    // Rank of the numerical Grothendieck group.
    int n() const { return rho + 2; }

    DivisorClass zero() const { return DivisorClass(static_cast<std::size_t>(rho)); }
    DivisorClass unit(int i) const {
        DivisorClass d = zero();
        d[static_cast<std::size_t>(i)] = 1;
        return d;
    }
};

inline IntersectionLattice make_blowup_p2(int k) {
    if (k < 0) throw std::invalid_argument("negative number of blown-up points");
    IntersectionLattice L;
    L.rho = k + 1;
    L.gram.assign(L.rho, std::vector<Int>(L.rho, Int(0)));
    L.K = DivisorClass(static_cast<std::size_t>(L.rho));
    L.gram[0][0] = 1;
    L.K[0] = -3;
    for (int i = 1; i < L.rho; ++i) {
        L.gram[i][i] = -1;
        L.K[i] = 1;
    }
    return L;
}

// Basis (P, Q) with P the fibre, Q^2 = a and P.Q = 1.
inline IntersectionLattice make_hirzebruch(int a) {
    if (a < 0) throw std::invalid_argument("negative Hirzebruch index");
    IntersectionLattice L;
    L.rho = 2;
    L.gram = {{Int(0), Int(1)}, {Int(1), Int(a)}};
    L.K = DivisorClass{Int(a - 2), Int(-2)};
    return L;
}

namespace detail {
inline void check_dim(const IntersectionLattice& L, std::size_t a, std::size_t b) {
    if (a != static_cast<std::size_t>(L.rho) || b != static_cast<std::size_t>(L.rho))
        throw std::invalid_argument("class dimension does not match lattice");
}
}  // namespace detail

inline Int pair(const IntersectionLattice& L, const DivisorClass& x, const DivisorClass& y) {
    detail::check_dim(L, x.size(), y.size());
    Int s = 0;
    for (int i = 0; i < L.rho; ++i)
        for (int j = 0; j < L.rho; ++j)
            if (L.gram[i][j] != 0) s += x[i] * L.gram[i][j] * y[j];
    return s;
}

inline Rat pair(const IntersectionLattice& L, const QDivisorClass& x, const QDivisorClass& y) {
    detail::check_dim(L, x.size(), y.size());
    Rat s = 0;
    for (int i = 0; i < L.rho; ++i)
        for (int j = 0; j < L.rho; ++j)
            if (L.gram[i][j] != 0) s += x[i] * L.gram[i][j] * y[j];
    return s;
}

inline Rat pair(const IntersectionLattice& L, const DivisorClass& x, const QDivisorClass& y) {
    return pair(L, to_q(x), y);
}

inline Rat pair(const IntersectionLattice& L, const QDivisorClass& x, const DivisorClass& y) {
    return pair(L, x, to_q(y));
}

struct Signature {
    int positive = 0, negative = 0, zero = 0;
};

// Sylvester inertia of a symmetric rational matrix by congruence diagonalization.
inline Signature inertia(const IMatrix& gram) {
    const std::size_t n = gram.size();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = gram[i][j];
    Signature s;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][p] == 0) ++p;
        if (p == n) {
            // No diagonal pivot: combine two basis vectors with nonzero off-diagonal entry.
            std::size_t r = n, q = n;
            for (std::size_t i = k; i < n && r == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (a[i][j] != 0) {
                        r = i;
                        q = j;
                        break;
                    }
            if (r == n) {
                s.zero += static_cast<int>(n - k);
                break;
            }
            for (std::size_t j = 0; j < n; ++j) a[r][j] += a[q][j];
            for (std::size_t i = 0; i < n; ++i) a[i][r] += a[i][q];
            p = r;
        }
        if (p != k) {
            std::swap(a[p], a[k]);
            for (auto& row : a) std::swap(row[p], row[k]);
        }
        const Rat piv = a[k][k];
        (piv > 0 ? s.positive : s.negative) += 1;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rat f = a[i][k] / piv;
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
        for (std::size_t j = k + 1; j < n; ++j) a[k][j] = 0;
        for (std::size_t i = k + 1; i < n; ++i) a[i][k] = 0;
    }
    return s;
}

struct LatticeReport {
    bool shape_ok = false;
    bool symmetric = false;
    Signature signature;
    bool signature_ok = false;
    Int k_squared = 0;
    Int expected_k_squared = 0;
    bool noether_ok = false;

    bool ok() const { return shape_ok && symmetric && signature_ok && noether_ok; }
};

inline LatticeReport validate_lattice(const IntersectionLattice& L) {
    LatticeReport r;
    const auto rho = static_cast<std::size_t>(L.rho);
    r.shape_ok = L.rho > 0 && L.gram.size() == rho && L.K.size() == rho;
    for (const auto& row : L.gram) r.shape_ok = r.shape_ok && row.size() == rho;
    if (!r.shape_ok) return r;
    r.symmetric = true;
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < rho; ++j) r.symmetric = r.symmetric && L.gram[i][j] == L.gram[j][i];
    if (r.symmetric) {
        r.signature = inertia(L.gram);
        r.signature_ok = r.signature.positive == 1 && r.signature.negative == L.rho - 1 && r.signature.zero == 0;
    }
    r.k_squared = pair(L, L.K, L.K);
    r.expected_k_squared = 12 - L.n();
    r.noether_ok = r.k_squared == r.expected_k_squared;
    return r;
}

// Coordinates change under x = U x'; U must be unimodular.
struct BaseChange {
    IMatrix U, Uinv;
};

inline BaseChange make_base_change(const IMatrix& U) {
    const std::size_t n = U.size();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = U[i][j];
        a[i][n + i] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) throw DomainError("base change is singular");
        std::swap(a[p], a[k]);
        Rat piv = a[k][k];
        for (auto& x : a[k]) x /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            Rat f = a[i][k];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    BaseChange b{U, IMatrix(n, std::vector<Int>(n))};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b.Uinv[i][j] = as_integer(a[i][n + j], "inverse base change");
    return b;
}

inline DivisorClass apply(const IMatrix& M, const DivisorClass& x) {
    DivisorClass y(M.size());
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += M[i][j] * x[j];
    return y;
}

inline QDivisorClass apply(const IMatrix& M, const QDivisorClass& x) {
    QDivisorClass y(M.size());
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += M[i][j] * x[j];
    return y;
}

// The same lattice written in the basis given by the columns of U.
inline IntersectionLattice change_basis(const IntersectionLattice& L, const BaseChange& b) {
    IntersectionLattice R;
    R.rho = L.rho;
    const auto n = static_cast<std::size_t>(L.rho);
    R.gram.assign(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) R.gram[i][j] += b.U[k][i] * L.gram[k][l] * b.U[l][j];
    R.K = apply(b.Uinv, L.K);
    return R;
}

}  // namespace exseq
