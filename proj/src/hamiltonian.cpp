#include "anderson/hamiltonian.hpp"

#include <stdexcept>

namespace anderson {

HamiltonianMatrix::HamiltonianMatrix(LatticeCube cube, std::vector<double> diagonal)
    : cube_(cube), diagonal_(std::move(diagonal)) {
    if (static_cast<long long>(diagonal_.size()) != cube_.n_sites())
        throw std::invalid_argument("HamiltonianMatrix: diagonal length != n_sites");
}

void HamiltonianMatrix::apply(std::span<const double> u, std::span<double> out) const {
    const long long n = cube_.n_sites();
    if (static_cast<long long>(u.size()) != n || static_cast<long long>(out.size()) != n)
        throw std::invalid_argument("HamiltonianMatrix::apply: size mismatch");
    std::vector<long long> nb;
    for (long long i = 0; i < n; ++i) {
        double acc = diagonal_[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
        cube_.neighbors(i, nb);
        for (long long j : nb) acc += u[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = acc;
    }
}

std::vector<double> HamiltonianMatrix::dense() const {
    const long long n = cube_.n_sites();
    std::vector<double> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    std::vector<long long> nb;
    for (long long i = 0; i < n; ++i) {
        a[static_cast<std::size_t>(i * n + i)] = diagonal_[static_cast<std::size_t>(i)];
        cube_.neighbors(i, nb);
        for (long long j : nb) a[static_cast<std::size_t>(i * n + j)] = 1.0;
    }
    return a;
}

HamiltonianMatrix assemble_hamiltonian(const LatticeCube& cube, const Potential& pot) {
    if (!(pot.cube == cube))
        throw std::invalid_argument("assemble_hamiltonian: potential belongs to another cube");
    return HamiltonianMatrix(cube, pot.values);
}

}  // namespace anderson
