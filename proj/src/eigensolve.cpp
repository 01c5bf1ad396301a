#include "anderson/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace anderson {

namespace {

double pythag(double a, double b) {
    const double absa = std::fabs(a), absb = std::fabs(b);
    if (absa > absb) {
        const double r = absb / absa;
        return absa * std::sqrt(1.0 + r * r);
    }
    if (absb == 0.0) return 0.0;
    const double r = absa / absb;
    return absb * std::sqrt(1.0 + r * r);
}

double sign_like(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

double frobenius_of_hamiltonian(const HamiltonianMatrix& H) {
    double s = 0.0;
    for (double v : H.diagonal()) s += v * v;
    s += 2.0 * H.cube().dim() * static_cast<double>(H.size());  // hop entries are all 1
    return std::sqrt(s);
}

std::string describe(const SpectralMeta& m) {
    return "d=" + std::to_string(m.d) + " L=" + std::to_string(m.L) +
           " seed=" + std::to_string(m.seed) +
           " realization_index=" + std::to_string(m.realization_index);
}

}  // namespace

double SpectralSample::gap_to_rest(int j) const {
    double gap = std::numeric_limits<double>::infinity();
    if (j > 0) gap = std::min(gap, eigenvalues[j] - eigenvalues[j - 1]);
    if (j + 1 < n) gap = std::min(gap, eigenvalues[j + 1] - eigenvalues[j]);
    return gap;
}

void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                    std::vector<double>& e, bool accumulate) {
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    auto A = [&](int r, int c) -> double& {
        return a[static_cast<std::size_t>(r) * n + c];
    };
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::fabs(A(i, k));
            if (scale == 0.0) {
                e[i] = A(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    A(i, k) /= scale;
                    h += A(i, k) * A(i, k);
                }
                double f = A(i, l);
                const double g = (f >= 0.0 ? -std::sqrt(h) : std::sqrt(h));
                e[i] = scale * g;
                h -= f * g;
                A(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    if (accumulate) A(j, i) = A(i, j) / h;
                    double gg = 0.0;
                    for (int k = 0; k <= j; ++k) gg += A(j, k) * A(i, k);
                    for (int k = j + 1; k <= l; ++k) gg += A(k, j) * A(i, k);
                    e[j] = gg / h;
                    f += e[j] * A(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = A(i, j);
                    const double gg = e[j] = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) A(j, k) -= (f * e[k] + gg * A(i, k));
                }
            }
        } else {
            e[i] = A(i, l);
        }
        d[i] = h;
    }
    if (accumulate) d[0] = 0.0;
    e[0] = 0.0;
    if (accumulate) {
        for (int i = 0; i < n; ++i) {
            const int l = i - 1;
            if (d[i] != 0.0) {
                for (int j = 0; j <= l; ++j) {
                    double g = 0.0;
                    for (int k = 0; k <= l; ++k) g += A(i, k) * A(k, j);
                    for (int k = 0; k <= l; ++k) A(k, j) -= g * A(k, i);
                }
            }
            d[i] = A(i, i);
            A(i, i) = 1.0;
            for (int j = 0; j <= l; ++j) A(j, i) = A(i, j) = 0.0;
        }
    } else {
        for (int i = 0; i < n; ++i) d[i] = A(i, i);
    }
    // shift subdiagonal to e[0..n-2]
    for (int i = 0; i < n - 1; ++i) e[i] = e[i + 1];
    e[n - 1] = 0.0;
}

void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e, int n, double* z,
                       const std::string& context) {
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) + dd == dd) break;
            }
            if (m != l) {
                if (iter++ == 30)
                    throw EigensolveError("ql_implicit_shift: no convergence in 30 iterations" +
                                          (context.empty() ? "" : " (" + context + ")"));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = pythag(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + sign_like(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    e[i + 1] = (r = pythag(f, g));
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    d[i + 1] = g + (p = s * r);
                    g = c * r - b;
                    if (z) {
                        for (int k = 0; k < n; ++k) {
                            f = z[static_cast<std::size_t>(k) * n + i + 1];
                            z[static_cast<std::size_t>(k) * n + i + 1] =
                                s * z[static_cast<std::size_t>(k) * n + i] + c * f;
                            z[static_cast<std::size_t>(k) * n + i] =
                                c * z[static_cast<std::size_t>(k) * n + i] - s * f;
                        }
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

namespace {

// shared tail of eig_all / eig_all_dense: QL, ascending sort, validation
SpectralSample finish_full(std::vector<double> a, int n, const EigensolveOptions& opts,
                           const std::vector<double>* dense_for_validation,
                           double frob) {
    std::vector<double> d, e;
    tridiagonalize(a, n, d, e, /*accumulate=*/true);
    ql_implicit_shift(d, e, n, a.data(), describe(opts.meta));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });

    SpectralSample out;
    out.n = n;
    out.meta = opts.meta;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        out.eigenvalues[j] = d[order[j]];
        for (int r = 0; r < n; ++r)
            out.eigenvectors[static_cast<std::size_t>(j) * n + r] =
                a[static_cast<std::size_t>(r) * n + order[j]];
    }

    if (opts.validate && dense_for_validation) {
        const auto& H = *dense_for_validation;
        const double res_tol = opts.tol_residual * frob;
        for (int j = 0; j < n; ++j) {
            auto phi = out.eigenvector(j);
            double res2 = 0.0;
            for (int r = 0; r < n; ++r) {
                double acc = -out.eigenvalues[j] * phi[r];
                const double* row = H.data() + static_cast<std::size_t>(r) * n;
                for (int c = 0; c < n; ++c) acc += row[c] * phi[c];
                res2 += acc * acc;
            }
            if (std::sqrt(res2) > res_tol)
                throw EigensolveError("eig_all: residual " + std::to_string(std::sqrt(res2)) +
                                      " exceeds tolerance for eigenvalue " + std::to_string(j) +
                                      " (" + describe(opts.meta) + ")");
        }
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            auto pj = out.eigenvector(j);
            for (int k = j; k < n; ++k) {
                auto pk = out.eigenvector(k);
                double dot = 0.0;
                for (int r = 0; r < n; ++r) dot += pj[r] * pk[r];
                worst = std::max(worst, std::fabs(dot - (j == k ? 1.0 : 0.0)));
            }
        }
        if (worst > opts.tol_orthonormal)
            throw EigensolveError("eig_all: eigenbasis departs from orthonormality by " +
                                  std::to_string(worst) + " (" + describe(opts.meta) + ")");
    }
    return out;
}

void check_trace(std::span<const double> evals, double trace, int n, double frob,
                 const std::string& context) {
    double s = 0.0;
    for (double v : evals) s += v;
    if (std::fabs(s - trace) > 1e-9 * n * std::max(frob, 1.0))
        throw EigensolveError("eigensolve: trace not conserved (" + std::to_string(s) +
                              " vs " + std::to_string(trace) + ") " + context);
}

}  // namespace

SpectralSample eig_all(const HamiltonianMatrix& H, const EigensolveOptions& opts) {
    const int n = H.size();
    if (n > opts.dense_limit)
        throw std::invalid_argument("eig_all: n_sites " + std::to_string(n) +
                                    " exceeds dense limit " + std::to_string(opts.dense_limit));
    std::vector<double> dense = H.dense();
    std::vector<double> work = dense;
    const double frob = frobenius_of_hamiltonian(H);
    auto out = finish_full(std::move(work), n, opts, &dense, frob);
    double trace = 0.0;
    for (double v : H.diagonal()) trace += v;
    check_trace(out.eigenvalues, trace, n, frob, describe(opts.meta));
    return out;
}

SpectralSample eig_all_dense(std::vector<double> a, int n, const EigensolveOptions& opts) {
    if (n > opts.dense_limit)
        throw std::invalid_argument("eig_all_dense: n exceeds dense limit");
    double frob = 0.0, trace = 0.0;
    for (int i = 0; i < n; ++i) {
        trace += a[static_cast<std::size_t>(i) * n + i];
        for (int j = 0; j < n; ++j) {
            const double v = a[static_cast<std::size_t>(i) * n + j];
            frob += v * v;
        }
    }
    frob = std::sqrt(frob);
    std::vector<double> dense = a;
    auto out = finish_full(std::move(a), n, opts, &dense, frob);
    check_trace(out.eigenvalues, trace, n, frob, describe(opts.meta));
    return out;
}

std::vector<double> eigenvalues_only(const HamiltonianMatrix& H, const EigensolveOptions& opts) {
    const int n = H.size();
    if (n > opts.dense_limit)
        throw std::invalid_argument("eigenvalues_only: n_sites exceeds dense limit");
    std::vector<double> a = H.dense();
    std::vector<double> d, e;
    tridiagonalize(a, n, d, e, /*accumulate=*/false);
    ql_implicit_shift(d, e, n, nullptr, describe(opts.meta));
    std::sort(d.begin(), d.end());
    double trace = 0.0;
    for (double v : H.diagonal()) trace += v;
    check_trace(d, trace, n, frobenius_of_hamiltonian(H), describe(opts.meta));
    return d;
}

std::vector<double> eigenvalues_only_dense(std::vector<double> a, int n,
                                           const std::string& context) {
    std::vector<double> d, e;
    tridiagonalize(a, n, d, e, /*accumulate=*/false);
    ql_implicit_shift(d, e, n, nullptr, context);
    std::sort(d.begin(), d.end());
    return d;
}

int sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x) {
    const std::size_t n = diag.size();
    if (offdiag.size() + 1 != n)
        throw std::invalid_argument("sturm_count: offdiag length must be diag length - 1");
    constexpr double tiny = std::numeric_limits<double>::min() /
                            std::numeric_limits<double>::epsilon();
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double b = i ? offdiag[i - 1] : 0.0;
        q = diag[i] - x - b * b / q;
        if (q == 0.0) q = tiny * std::max(std::fabs(b), 1.0);
        if (q < 0.0) ++count;
    }
    return count;
}

DirichletSpectrum dirichlet_spectrum(int n) {
    if (n < 1) throw std::invalid_argument("dirichlet_spectrum: n must be >= 1");
    DirichletSpectrum out;
    out.n = n;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(static_cast<std::size_t>(n) * n);
    const double t = M_PI / (n + 1);
    const double norm = std::sqrt(2.0 / (n + 1));
    // 2 cos(k t) decreases in k, so k = n, n-1, ..., 1 lists them ascending.
    for (int j = 0; j < n; ++j) {
        const int k = n - j;
        out.eigenvalues[j] = 2.0 * std::cos(k * t);
        for (int r = 0; r < n; ++r)
            out.eigenvectors[static_cast<std::size_t>(j) * n + r] =
                norm * std::sin(k * (r + 1) * t);
    }
    return out;
}

std::vector<double> dirichlet_matrix(int n) {
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        a[static_cast<std::size_t>(i) * n + i + 1] = 1.0;
        a[static_cast<std::size_t>(i + 1) * n + i] = 1.0;
    }
    return a;
}

double dirichlet_min_gap(int n) {
    if (n < 2) throw std::invalid_argument("dirichlet_min_gap: n must be >= 2");
    const double t = M_PI / (n + 1);
    const double sin_half = std::sin(0.5 * t);
    // adjacent gaps of a sorted sequence; 2cos(kt) - 2cos((k+1)t) =
    // 4 sin((2k+1)t/2) sin(t/2)
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k < n; ++k)
        best = std::min(best, 4.0 * std::sin((2 * k + 1) * 0.5 * t) * sin_half);
    return best;
}

}  // namespace anderson
