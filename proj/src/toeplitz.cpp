#include "fhlab/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "fhlab/error.hpp"
#include "fhlab/parallel.hpp"

namespace fhlab::toeplitz {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Dense complex LU with partial pivoting, row-major.
class LuFactor {
public:
    LuFactor(std::vector<cplx> a, int n) : a_(std::move(a)), n_(n), piv_(n) {
        pivot_min_ = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n_; ++k) {
            int p = k;
            double best = std::abs(at(k, k));
            for (int i = k + 1; i < n_; ++i) {
                const double cand = std::abs(at(i, k));
                if (cand > best) {
                    best = cand;
                    p = i;
                }
            }
            piv_[k] = p;
            if (p != k) {
                for (int j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
                ++swaps_;
            }
            const cplx pivot = at(k, k);
            pivot_min_ = std::min(pivot_min_, std::abs(pivot));
            if (std::abs(pivot) < 1e-300)
                throw Error("toeplitz", "lu", "numerically zero pivot",
                            {{"k", std::to_string(k)}});
            for (int i = k + 1; i < n_; ++i) {
                const cplx m = at(i, k) / pivot;
                at(i, k) = m;
                for (int j = k + 1; j < n_; ++j) at(i, j) -= m * at(k, j);
            }
        }
    }

    double pivot_min() const { return pivot_min_; }

    // Sum of log(pivots) plus i*pi per row swap; imaginary part not reduced.
    cplx log_det_raw() const {
        double re = 0.0, im = kPi * swaps_;
        for (int k = 0; k < n_; ++k) {
            const cplx p = at(k, k);
            re += std::log(std::abs(p));
            im += std::atan2(p.imag(), p.real());
        }
        return {re, im};
    }

    void solve(std::vector<cplx>& b) const {
        for (int k = 0; k < n_; ++k) {
            if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
            for (int i = k + 1; i < n_; ++i) b[i] -= at(i, k) * b[k];
        }
        for (int k = n_ - 1; k >= 0; --k) {
            for (int j = k + 1; j < n_; ++j) b[k] -= at(k, j) * b[j];
            b[k] /= at(k, k);
        }
    }

    // Solve A^T x = b (needed by the 1-norm condition estimator).
    void solve_transposed(std::vector<cplx>& b) const {
        for (int k = 0; k < n_; ++k) {
            for (int j = 0; j < k; ++j) b[k] -= at(j, k) * b[j];
            b[k] /= at(k, k);
        }
        for (int k = n_ - 1; k >= 0; --k) {
            for (int i = k + 1; i < n_; ++i) b[k] -= at(i, k) * b[i];
            if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
        }
    }

private:
    cplx& at(int i, int j) { return a_[(size_t)i * n_ + j]; }
    const cplx& at(int i, int j) const { return a_[(size_t)i * n_ + j]; }

    std::vector<cplx> a_;
    int n_;
    std::vector<int> piv_;
    int swaps_ = 0;
    double pivot_min_ = 0.0;
};

std::vector<cplx> toeplitz_matrix(const FourierTable& table, int n) {
    std::vector<cplx> a((size_t)n * n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) a[(size_t)j * n + k] = table.f(j - k);
    return a;
}

// Hager-style 1-norm estimate of ||A^-1||_1 from an LU factorization.
double inverse_norm1_estimate(const LuFactor& lu, int n) {
    std::vector<cplx> x(n, cplx(1.0 / n, 0.0));
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        std::vector<cplx> y = x;
        lu.solve(y);
        double norm = 0.0;
        for (const cplx& v : y) norm += std::abs(v);
        if (norm <= est && iter > 0) break;
        est = norm;
        std::vector<cplx> xi(n);
        for (int i = 0; i < n; ++i) {
            const double m = std::abs(y[i]);
            xi[i] = m == 0.0 ? cplx(1.0, 0.0) : y[i] / m;
        }
        lu.solve_transposed(xi);
        int best = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(xi[i]) > std::abs(xi[best])) best = i;
        x.assign(n, cplx(0.0));
        x[best] = 1.0;
    }
    return est;
}

DeterminantRecord record_from_lu(const LuFactor& lu, const FourierTable& table, int n) {
    DeterminantRecord rec;
    rec.n = n;
    rec.t = table.t;
    rec.pivot_min = lu.pivot_min();
    cplx raw = lu.log_det_raw();
    rec.branch_note = (int)std::lround((raw.imag() - std::remainder(raw.imag(), kTwoPi)) / kTwoPi);
    rec.log_det = {raw.real(), std::remainder(raw.imag(), kTwoPi)};
    return rec;
}

cplx log_det_of(const std::vector<DeterminantRecord>& dets, int n,
                const char* operation) {
    if (n == 0) return 0.0;  // D_0 == 1
    for (const auto& rec : dets)
        if (rec.n == n) return rec.log_det;
    throw Error("toeplitz", operation, "missing determinant record",
                {{"n", std::to_string(n)}});
}

std::vector<DeterminantRecord> det_range_impl(const FourierTable& table, int n,
                                              bool parallel) {
    if (table.n_max < n - 1)
        throw Error("toeplitz", "log_toeplitz_det", "table does not cover |j| <= n-1",
                    {{"n", std::to_string(n)}, {"n_max", std::to_string(table.n_max)}});
    std::vector<DeterminantRecord> out(n);
    std::exception_ptr failure = nullptr;
    const int nt = thread_count();
#pragma omp parallel for schedule(dynamic) num_threads(nt) if (parallel)
    for (int m = 1; m <= n; ++m) {
        try {
            LuFactor lu(toeplitz_matrix(table, m), m);
            out[m - 1] = record_from_lu(lu, table, m);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace

cplx eval_poly(const std::vector<cplx>& coeffs, cplx z) {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

DeterminantRecord log_toeplitz_det(const FourierTable& table, int n) {
    if (n < 1)
        throw Error("toeplitz", "log_toeplitz_det", "n must be >= 1",
                    {{"n", std::to_string(n)}});
    if (table.n_max < n - 1)
        throw Error("toeplitz", "log_toeplitz_det", "table does not cover |j| <= n-1",
                    {{"n", std::to_string(n)}, {"n_max", std::to_string(table.n_max)}});
    LuFactor lu(toeplitz_matrix(table, n), n);
    return record_from_lu(lu, table, n);
}

std::vector<DeterminantRecord> log_toeplitz_det_range(const FourierTable& table, int n) {
    return det_range_impl(table, n, true);
}

std::vector<DeterminantRecord> log_toeplitz_det_range_serial(const FourierTable& table,
                                                             int n) {
    return det_range_impl(table, n, false);
}

OrthoPolyPair ortho_poly(const FourierTable& table,
                         const std::vector<DeterminantRecord>& dets, int n) {
    if (table.n_max < n)
        throw Error("toeplitz", "ortho_poly", "table does not cover |j| <= n",
                    {{"n", std::to_string(n)}});
    const cplx log_dn = log_det_of(dets, n, "ortho_poly");
    const cplx log_dnp1 = log_det_of(dets, n + 1, "ortho_poly");
    const cplx chi = std::exp(0.5 * (log_dn - log_dnp1));

    const int m = n + 1;
    std::vector<cplx> a = toeplitz_matrix(table, m);
    std::vector<cplx> at((size_t)m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) at[(size_t)i * m + j] = a[(size_t)j * m + i];

    double norm1 = 0.0;
    for (int j = 0; j < m; ++j) {
        double col = 0.0;
        for (int i = 0; i < m; ++i) col += std::abs(a[(size_t)i * m + j]);
        norm1 = std::max(norm1, col);
    }

    LuFactor lu(std::move(a), m);
    OrthoPolyPair pair;
    pair.n = n;
    pair.chi = chi;
    pair.cond_est = norm1 * inverse_norm1_estimate(lu, m);
    pair.ill_conditioned = pair.cond_est > 1e12;

    std::vector<cplx> x(m, cplx(0.0));
    x[n] = 1.0;
    lu.solve(x);
    pair.phi.resize(m);
    for (int i = 0; i < m; ++i) pair.phi[i] = x[i] / chi;

    LuFactor lut(std::move(at), m);
    std::vector<cplx> y(m, cplx(0.0));
    y[n] = 1.0;
    lut.solve(y);
    pair.phi_hat.resize(m);
    for (int i = 0; i < m; ++i) pair.phi_hat[i] = y[i] / chi;
    return pair;
}

YMatrix y_matrix(const OrthoPolyPair& pair_n, const OrthoPolyPair& pair_nm1,
                 const FourierTable& table, cplx z) {
    const int n = pair_n.n;
    if (pair_nm1.n != n - 1)
        throw Error("toeplitz", "y_matrix", "pair_nm1 must have degree n-1",
                    {{"n", std::to_string(n)},
                     {"n_minus_one", std::to_string(pair_nm1.n)}});
    const double dist = std::abs(std::abs(z) - 1.0);
    if (dist < 10.0 / table.quadrature_nodes)
        throw Error("toeplitz", "y_matrix", "z too close to the unit circle",
                    {{"abs_z", std::to_string(std::abs(z))}});

    YMatrix y;
    y.y11 = eval_poly(pair_n.phi, z) / pair_n.chi;
    y.y21 = -pair_nm1.chi * std::pow(z, n - 1) * eval_poly(pair_nm1.phi_hat, 1.0 / z);

    cplx c12 = 0.0, c22 = 0.0;
    const int nodes = (int)table.node_theta.size();
    for (int m = 0; m < nodes; ++m) {
        const cplx xi = std::polar(1.0, table.node_theta[m]);
        const cplx common = table.node_weight[m] * table.node_value[m] / (xi - z);
        c12 += common * eval_poly(pair_n.phi, xi) * std::pow(xi, 1 - n);
        c22 += common * eval_poly(pair_nm1.phi_hat, 1.0 / xi);
    }
    y.y12 = c12 / pair_n.chi;
    y.y22 = -pair_nm1.chi * c22;
    return y;
}

double verify_differential_identity(const SymbolSpec& spec, int n, double t, double h) {
    if (!(t > h && h > 0.0))
        throw Error("toeplitz", "verify_differential_identity", "need t > h > 0",
                    {{"t", std::to_string(t)}, {"h", std::to_string(h)}});
    if (n > 16)
        throw Error("toeplitz", "verify_differential_identity", "n must be <= 16",
                    {{"n", std::to_string(n)}});

    int support = 0;
    for (const auto& [k, v] : spec.v_coeffs) support = std::max(support, std::abs(k));
    const int nodes = std::max(8 * (n + support + 2), 512);

    const auto log_det_at = [&](double tv) {
        SymbolSpec s = spec;
        s.t = tv;
        const FourierTable table = symbol::fourier_coeffs(s, n + 1, nodes);
        return log_toeplitz_det(table, n).log_det;
    };
    const cplx dplus = log_det_at(t + h);
    const cplx dminus = log_det_at(t - h);
    cplx delta = dplus - dminus;
    delta = {delta.real(), std::remainder(delta.imag(), kTwoPi)};
    const cplx lhs = delta / (2.0 * h);

    SymbolSpec s0 = spec;
    s0.t = t;
    const FourierTable table = symbol::fourier_coeffs(s0, n + 1, nodes);
    const auto dets = log_toeplitz_det_range(table, n + 1);
    const OrthoPolyPair pair_n = ortho_poly(table, dets, n);
    const OrthoPolyPair pair_nm1 = ortho_poly(table, dets, n - 1);

    // (Y^-1 Y')_22 with the z-derivative by Richardson-extrapolated
    // central differences.
    const auto g22 = [&](cplx z) {
        const double hz = 1e-5 * std::max(1.0, std::abs(z));
        const auto deriv = [&](double step) {
            const YMatrix yp = y_matrix(pair_n, pair_nm1, table, z + step);
            const YMatrix ym = y_matrix(pair_n, pair_nm1, table, z - step);
            return YMatrix{(yp.y11 - ym.y11) / (2.0 * step), (yp.y12 - ym.y12) / (2.0 * step),
                           (yp.y21 - ym.y21) / (2.0 * step), (yp.y22 - ym.y22) / (2.0 * step)};
        };
        const YMatrix d1 = deriv(hz);
        const YMatrix d2 = deriv(hz / 2.0);
        const cplx dy12 = (4.0 * d2.y12 - d1.y12) / 3.0;
        const cplx dy22 = (4.0 * d2.y22 - d1.y22) / 3.0;
        const YMatrix y = y_matrix(pair_n, pair_nm1, table, z);
        return (y.y11 * dy22 - y.y21 * dy12) / y.det();
    };

    const cplx a = spec.alpha, b = spec.beta;
    const double et = std::exp(t);
    const cplx rhs = -(a + b) * et * g22(et) + (a - b) / et * g22(1.0 / et);
    return std::abs(lhs - rhs);
}

}  // namespace fhlab::toeplitz
