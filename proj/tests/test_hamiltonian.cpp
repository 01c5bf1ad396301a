#include <doctest.h>

#include <cmath>

#include "anderson/eigensolve.hpp"
#include "anderson/hamiltonian.hpp"

using namespace anderson;

TEST_CASE("free Laplacian ring spectra") {
    LatticeCube c3(1, 1);
    const auto e3 = eigenvalues_only(assemble_hamiltonian(c3, {c3, {0, 0, 0}, 0, 0}));
    CHECK(e3[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(e3[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(e3[2] == doctest::Approx(2.0).epsilon(1e-12));

    LatticeCube c5(1, 2);
    const auto e5 =
        eigenvalues_only(assemble_hamiltonian(c5, {c5, std::vector<double>(5, 0.0), 0, 0}));
    std::vector<double> want;
    for (int k = 0; k < 5; ++k) want.push_back(2.0 * std::cos(2.0 * M_PI * k / 5.0));
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 5; ++i) CHECK(e5[i] == doctest::Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("dense materialization: symmetry exact, hop row sums 2d") {
    DisorderSpec spec{DisorderLaw::uniform, 0.0, 4.0, 31};
    for (int d = 1; d <= 2; ++d) {
        LatticeCube cube(d, 2);
        const auto H = assemble_hamiltonian(cube, sample_potential(cube, spec, 0));
        const auto a = H.dense();
        const long long n = cube.n_sites();
        for (long long i = 0; i < n; ++i) {
            double hops = 0.0;
            for (long long j = 0; j < n; ++j) {
                CHECK(a[static_cast<std::size_t>(i * n + j)] ==
                      a[static_cast<std::size_t>(j * n + i)]);
                if (i != j) hops += a[static_cast<std::size_t>(i * n + j)];
            }
            CHECK(hops == 2.0 * d);
            CHECK(a[static_cast<std::size_t>(i * n + i)] ==
                  H.diagonal()[static_cast<std::size_t>(i)]);
        }
    }
}

TEST_CASE("apply matches the dense matrix") {
    DisorderSpec spec{DisorderLaw::uniform, -1.0, 1.0, 8};
    LatticeCube cube(2, 3);
    const auto H = assemble_hamiltonian(cube, sample_potential(cube, spec, 2));
    const auto a = H.dense();
    const long long n = cube.n_sites();
    std::vector<double> u(n), got(n);
    for (long long i = 0; i < n; ++i) u[i] = std::sin(0.37 * static_cast<double>(i) + 0.2);
    H.apply(u, got);
    for (long long i = 0; i < n; ++i) {
        double want = 0.0;
        for (long long j = 0; j < n; ++j) want += a[static_cast<std::size_t>(i * n + j)] * u[j];
        CHECK(got[i] == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("Gershgorin containment of the spectrum") {
    DisorderSpec spec{DisorderLaw::uniform, 0.0, 4.0, 55};
    const int d = 1, L = 30;
    LatticeCube cube(d, L);
    for (int r = 0; r < 5; ++r) {
        const auto evs =
            eigenvalues_only(assemble_hamiltonian(cube, sample_potential(cube, spec, r)));
        CHECK(evs.front() >= HamiltonianMatrix::gershgorin_lo(spec, d));
        CHECK(evs.back() <= HamiltonianMatrix::gershgorin_hi(spec, d));
    }
}

TEST_CASE("potential from another cube rejected") {
    LatticeCube a(1, 3), b(1, 4);
    DisorderSpec spec;
    const Potential p = sample_potential(a, spec, 0);
    CHECK_THROWS_AS(assemble_hamiltonian(b, p), std::invalid_argument);
}
