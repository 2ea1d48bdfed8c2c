#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "cdlab/errors.hpp"

namespace cdlab {

/// Prefactorized constant tridiagonal system (Thomas algorithm).
/// The matrix is factored once; solves reuse the elimination coefficients.
class TridiagLU {
public:
    TridiagLU() = default;

    /// Factor the system with sub/super diagonals `lower`/`upper` (size n-1)
    /// and diagonal `diag` (size n).
    void factor(const std::vector<double>& lower, const std::vector<double>& diag,
                const std::vector<double>& upper) {
        const std::size_t n = diag.size();
        inv_diag_.assign(n, 0.0);
        mult_.assign(n, 0.0);
        upper_ = upper;
        double piv = diag[0];
        if (std::abs(piv) < 1e-300) throw IllConditioned("TridiagLU: zero pivot");
        inv_diag_[0] = 1.0 / piv;
        for (std::size_t i = 1; i < n; ++i) {
            mult_[i] = lower[i - 1] * inv_diag_[i - 1];
            piv = diag[i] - mult_[i] * upper[i - 1];
            if (std::abs(piv) < 1e-300) throw IllConditioned("TridiagLU: zero pivot");
            inv_diag_[i] = 1.0 / piv;
        }
    }

    /// Solve in place: x holds the right-hand side on entry.
    void solve(std::vector<double>& x) const {
        const std::size_t n = inv_diag_.size();
        for (std::size_t i = 1; i < n; ++i) x[i] -= mult_[i] * x[i - 1];
        x[n - 1] *= inv_diag_[n - 1];
        for (std::size_t i = n - 1; i-- > 0;)
            x[i] = (x[i] - upper_[i] * x[i + 1]) * inv_diag_[i];
    }

    std::size_t size() const { return inv_diag_.size(); }

private:
    std::vector<double> inv_diag_, mult_, upper_;
};

/// Block-tridiagonal solver with 2x2 blocks, used by the wave Newton
/// iteration (unknowns interleaved as (U_i, V_i) per grid node).
/// Rebuilt every solve; no pivoting beyond the 2x2 block inverse.
class BlockTridiag2 {
public:
    using Mat2 = std::array<double, 4>; // row-major [a00 a01; a10 a11]
    using Vec2 = std::array<double, 2>;

    explicit BlockTridiag2(std::size_t n)
        : n_(n), lower_(n, Mat2{}), diag_(n, Mat2{}), upper_(n, Mat2{}), rhs_(n, Vec2{}) {}

    void reset() {
        std::fill(lower_.begin(), lower_.end(), Mat2{});
        std::fill(diag_.begin(), diag_.end(), Mat2{});
        std::fill(upper_.begin(), upper_.end(), Mat2{});
        std::fill(rhs_.begin(), rhs_.end(), Vec2{});
    }

    Mat2& lower(std::size_t i) { return lower_[i]; }
    Mat2& diag(std::size_t i) { return diag_[i]; }
    Mat2& upper(std::size_t i) { return upper_[i]; }
    Vec2& rhs(std::size_t i) { return rhs_[i]; }

    /// Block Thomas elimination; writes the solution into `x` (size 2n).
    void solve(std::vector<double>& x) {
        std::vector<Mat2> dinv(n_);
        std::vector<Vec2> y(n_);
        Mat2 D = diag_[0];
        dinv[0] = inv2(D);
        y[0] = rhs_[0];
        for (std::size_t i = 1; i < n_; ++i) {
            const Mat2 L = mul(lower_[i], dinv[i - 1]);
            D = sub(diag_[i], mul(L, upper_[i - 1]));
            dinv[i] = inv2(D);
            y[i] = sub(rhs_[i], mul(L, y[i - 1]));
        }
        Vec2 xi = mul(dinv[n_ - 1], y[n_ - 1]);
        x[2 * (n_ - 1)] = xi[0];
        x[2 * (n_ - 1) + 1] = xi[1];
        for (std::size_t i = n_ - 1; i-- > 0;) {
            const Vec2 xn{x[2 * (i + 1)], x[2 * (i + 1) + 1]};
            xi = mul(dinv[i], sub(y[i], mul(upper_[i], xn)));
            x[2 * i] = xi[0];
            x[2 * i + 1] = xi[1];
        }
    }

private:
    static Mat2 inv2(const Mat2& m) {
        const double det = m[0] * m[3] - m[1] * m[2];
        if (!(std::abs(det) > 1e-300)) throw IllConditioned("BlockTridiag2: singular 2x2 pivot");
        const double id = 1.0 / det;
        return {m[3] * id, -m[1] * id, -m[2] * id, m[0] * id};
    }
    static Mat2 mul(const Mat2& a, const Mat2& b) {
        return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
    }
    static Vec2 mul(const Mat2& a, const Vec2& v) {
        return {a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]};
    }
    static Mat2 sub(const Mat2& a, const Mat2& b) {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
    }
    static Vec2 sub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }

    std::size_t n_;
    std::vector<Mat2> lower_, diag_, upper_;
    std::vector<Vec2> rhs_;
};

} // namespace cdlab
