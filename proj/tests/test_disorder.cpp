#include <doctest.h>

#include <cmath>

#include "anderson/disorder.hpp"

using namespace anderson;

TEST_CASE("spec validation") {
    DisorderSpec bad{DisorderLaw::uniform, 2.0, 2.0, 1};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK(disorder_law_from_string("uniform") == DisorderLaw::uniform);
    CHECK(disorder_law_from_string("triangular") == DisorderLaw::triangular);
    CHECK_THROWS_AS(disorder_law_from_string("gaussian"), std::invalid_argument);
    DisorderSpec s{DisorderLaw::uniform, -1.0, 6.0, 1};
    CHECK(s.coupling_bound() == 6.0);
}

TEST_CASE("determinism and support") {
    LatticeCube cube(2, 5);
    DisorderSpec spec{DisorderLaw::uniform, -0.5, 3.5, 123};
    const Potential p1 = sample_potential(cube, spec, 4);
    const Potential p2 = sample_potential(cube, spec, 4);
    CHECK(p1.values == p2.values);
    const Potential p3 = sample_potential(cube, spec, 5);
    CHECK(p1.values != p3.values);
    for (double v : p1.values) {
        CHECK(v >= -0.5);
        CHECK(v <= 3.5);
    }
    CHECK(p1.realization_index == 4);
    CHECK(static_cast<long long>(p1.values.size()) == cube.n_sites());
}

TEST_CASE("law of large numbers, uniform on [0,1]") {
    // 10^5 draws, empirical mean within 0.01 of 0.5
    DisorderSpec spec{DisorderLaw::uniform, 0.0, 1.0, 77};
    LatticeCube cube(1, 50000);
    const Potential p = sample_potential(cube, spec, 0);
    double mean = 0.0;
    for (double v : p.values) mean += v;
    mean /= static_cast<double>(p.values.size());
    CHECK(std::fabs(mean - 0.5) < 0.01);
}

TEST_CASE("triangular law: support, symmetry about the midpoint") {
    DisorderSpec spec{DisorderLaw::triangular, 1.0, 3.0, 9};
    LatticeCube cube(1, 20000);
    const Potential p = sample_potential(cube, spec, 0);
    double mean = 0.0, var = 0.0;
    for (double v : p.values) {
        CHECK(v >= 1.0);
        CHECK(v <= 3.0);
        mean += v;
    }
    mean /= static_cast<double>(p.values.size());
    CHECK(std::fabs(mean - 2.0) < 0.01);
    for (double v : p.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(p.values.size());
    // triangular on [a,b] has variance (b-a)^2/24
    CHECK(std::fabs(var - 4.0 / 24.0) < 0.01);
}

TEST_CASE("sub-box potential is the literal restriction") {
    DisorderSpec spec{DisorderLaw::uniform, 0.0, 4.0, 2024};
    LatticeCube big(1, 40), small(1, 12);
    const Potential pb = sample_potential(big, spec, 3);
    const Potential ps = sample_potential(small, spec, 3);
    for (long long i = 0; i < small.n_sites(); ++i) {
        const auto coords = small.coords_of(i);
        CHECK(ps.values[static_cast<std::size_t>(i)] ==
              pb.values[static_cast<std::size_t>(big.flat_index(coords))]);
    }
}

TEST_CASE("draws are independent of cube shape at equal coordinates") {
    DisorderSpec spec{DisorderLaw::uniform, 0.0, 1.0, 5};
    LatticeCube a(2, 3), b(2, 7);
    const Potential pa = sample_potential(a, spec, 1);
    const Potential pb = sample_potential(b, spec, 1);
    const int probe[] = {-2, 3};  // inside b only
    (void)probe;
    for (long long i = 0; i < a.n_sites(); ++i) {
        const auto coords = a.coords_of(i);
        CHECK(pa.values[static_cast<std::size_t>(i)] ==
              pb.values[static_cast<std::size_t>(b.flat_index(coords))]);
    }
}

TEST_CASE("negative realization index rejected") {
    LatticeCube cube(1, 2);
    DisorderSpec spec;
    CHECK_THROWS_AS(sample_potential(cube, spec, -1), std::invalid_argument);
}
