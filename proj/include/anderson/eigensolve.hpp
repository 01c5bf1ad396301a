#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "anderson/hamiltonian.hpp"

namespace anderson {

struct EigensolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectralMeta {
    int d = 0;
    int L = 0;
    std::uint64_t seed = 0;
    int realization_index = 0;
};

// Full eigendecomposition of one realization: eigenvalues ascending and
// repeated by multiplicity, orthonormal eigenvectors aligned with them.
// Eigenvector j is the contiguous slice [j*n, (j+1)*n).
struct SpectralSample {
    int n = 0;
    std::vector<double> eigenvalues;
    std::vector<double> eigenvectors;  // column-contiguous, size n*n; empty if not computed
    SpectralMeta meta;

    std::span<const double> eigenvector(int j) const {
        return {eigenvectors.data() + static_cast<std::size_t>(j) * n,
                static_cast<std::size_t>(n)};
    }
    // Distance from eigenvalue j to the rest of the spectrum.
    double gap_to_rest(int j) const;
};

struct EigensolveOptions {
    int dense_limit = 4096;   // refuse larger matrices
    bool validate = true;     // residual + orthonormality check (full path only)
    double tol_residual = 1e-10;     // ||H phi - E phi|| <= tol * ||H||_F
    double tol_orthonormal = 1e-10;  // max |Gram - I| entry
    SpectralMeta meta;               // attached to the sample, echoed in errors
};

// --- kernels -----------------------------------------------------------

// Householder reduction of a dense symmetric matrix (row-major, n x n) to
// tridiagonal form. On return d holds the diagonal, e[0..n-2] the
// subdiagonal. With accumulate, a is replaced by the orthogonal Q of the
// reduction; otherwise a's contents are destroyed.
void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                    std::vector<double>& e, bool accumulate);

// Implicit-shift QL on a tridiagonal matrix. d/e as produced by
// tridiagonalize (e[n-1] is workspace). If z is non-null it must point to a
// row-major n x n matrix whose columns are rotated along (identity for the
// eigenvectors of the tridiagonal matrix itself, Q for a reduced matrix).
// Throws EigensolveError after 30 iterations on a single eigenvalue.
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e, int n, double* z,
                       const std::string& context = {});

// --- operations --------------------------------------------------------

SpectralSample eig_all(const HamiltonianMatrix& H, const EigensolveOptions& opts = {});

// Eigenvalues only (ascending); skips eigenvector accumulation. Checks trace
// conservation against the matrix diagonal.
std::vector<double> eigenvalues_only(const HamiltonianMatrix& H,
                                     const EigensolveOptions& opts = {});

// Same entry points for an arbitrary dense symmetric matrix (used by the
// Dirichlet oracle and the finite-difference checks).
SpectralSample eig_all_dense(std::vector<double> a, int n, const EigensolveOptions& opts = {});
std::vector<double> eigenvalues_only_dense(std::vector<double> a, int n,
                                           const std::string& context = {});

// #{eigenvalues < x} of the open-boundary tridiagonal matrix (diag, offdiag)
// via the Sturm sign-count recurrence with the standard underflow guard.
int sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x);

// Closed-form spectrum of the Dirichlet Laplacian on a segment of n sites
// (hopping matrix of the open chain): eigenvalues 2 cos(k pi / (n+1)),
// eigenvectors sin(k j pi / (n+1)), unit-normalized. Ascending order.
struct DirichletSpectrum {
    int n = 0;
    std::vector<double> eigenvalues;
    std::vector<double> eigenvectors;  // column-contiguous like SpectralSample
    std::span<const double> eigenvector(int j) const {
        return {eigenvectors.data() + static_cast<std::size_t>(j) * n,
                static_cast<std::size_t>(n)};
    }
};
DirichletSpectrum dirichlet_spectrum(int n);

// Dense hopping matrix of the open chain (the matrix dirichlet_spectrum
// diagonalizes), for oracle cross-checks.
std::vector<double> dirichlet_matrix(int n);

// Minimal spacing of the Dirichlet spectrum, computed through the
// cancellation-free product form 4 sin((2k+1)t/2) sin(t/2), t = pi/(n+1).
double dirichlet_min_gap(int n);

}  // namespace anderson
