#pragma once

#include <span>
#include <vector>

#include "anderson/disorder.hpp"
#include "anderson/lattice.hpp"

namespace anderson {

// H_omega(Lambda) = -Delta + V_omega with periodic boundary conditions:
// (Hu)_n = sum_{|m-n|=1 mod wrap} u_m + omega_n u_n. The hop structure is
// implicit (every row has exactly 2d unit off-diagonal entries); only the
// diagonal is stored. Dense materialization on demand for the eigensolver.
class HamiltonianMatrix {
public:
    HamiltonianMatrix(LatticeCube cube, std::vector<double> diagonal);

    const LatticeCube& cube() const { return cube_; }
    std::span<const double> diagonal() const { return diagonal_; }
    int size() const { return static_cast<int>(cube_.n_sites()); }

    void apply(std::span<const double> u, std::span<double> out) const;
    std::vector<double> dense() const;  // row-major, size n*n

    // Spectrum is contained in [a - 2d, b + 2d] by Gershgorin, for any
    // potential supported in [a, b].
    static double gershgorin_lo(const DisorderSpec& spec, int d) { return spec.a - 2.0 * d; }
    static double gershgorin_hi(const DisorderSpec& spec, int d) { return spec.b + 2.0 * d; }

private:
    LatticeCube cube_;
    std::vector<double> diagonal_;
};

HamiltonianMatrix assemble_hamiltonian(const LatticeCube& cube, const Potential& pot);

}  // namespace anderson
