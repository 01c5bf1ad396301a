#include "anderson/disorder.hpp"

#include <cmath>
#include <stdexcept>

#include "anderson/rng.hpp"

namespace anderson {

std::string to_string(DisorderLaw law) {
    return law == DisorderLaw::uniform ? "uniform" : "triangular";
}

DisorderLaw disorder_law_from_string(const std::string& s) {
    if (s == "uniform") return DisorderLaw::uniform;
    if (s == "triangular") return DisorderLaw::triangular;
    throw std::invalid_argument("unknown disorder law '" + s +
                                "' (expected 'uniform' or 'triangular')");
}

void DisorderSpec::validate() const {
    if (!(a < b)) throw std::invalid_argument("DisorderSpec: requires a < b");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("DisorderSpec: bounds must be finite");
}

double DisorderSpec::coupling_bound() const { return std::max(std::fabs(a), std::fabs(b)); }

double sample_site_value(const DisorderSpec& spec, int realization_index,
                         std::span<const int> coords) {
    rng::Xoshiro256ss gen(rng::stream_seed(spec.base_seed,
                                           static_cast<std::uint64_t>(realization_index),
                                           rng::site_key(coords)));
    double u;
    if (spec.law == DisorderLaw::uniform) {
        u = gen.uniform01();
    } else {
        u = 0.5 * (gen.uniform01() + gen.uniform01());
    }
    return spec.a + (spec.b - spec.a) * u;
}

Potential sample_potential(const LatticeCube& cube, const DisorderSpec& spec,
                           int realization_index) {
    spec.validate();
    if (realization_index < 0)
        throw std::invalid_argument("sample_potential: realization_index must be >= 0");
    Potential pot{cube, {}, 0, realization_index};
    pot.seed_used = rng::stream_seed(spec.base_seed,
                                     static_cast<std::uint64_t>(realization_index), 0);
    pot.values.resize(static_cast<std::size_t>(cube.n_sites()));
    std::vector<int> coords(cube.dim());
    for (long long i = 0; i < cube.n_sites(); ++i) {
        cube.coords_of(i, coords);
        pot.values[static_cast<std::size_t>(i)] =
            sample_site_value(spec, realization_index, coords);
    }
    return pot;
}

}  // namespace anderson
