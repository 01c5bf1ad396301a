#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anderson/lattice.hpp"

namespace anderson {

enum class DisorderLaw { uniform, triangular };

std::string to_string(DisorderLaw law);
DisorderLaw disorder_law_from_string(const std::string& s);

// Law of the i.i.d. on-site potential: a bounded, compactly supported density
// on [a, b] (uniform, or symmetric triangular as the sum of two scaled
// uniforms), plus the 64-bit base seed of the counter-based stream scheme.
struct DisorderSpec {
    DisorderLaw law = DisorderLaw::uniform;
    double a = 0.0;
    double b = 4.0;
    std::uint64_t base_seed = 1;

    void validate() const;
    // K = max(|a|, |b|), the bound on the random variables used in the
    // gradient-separation estimate.
    double coupling_bound() const;
};

struct Potential {
    LatticeCube cube;
    std::vector<double> values;  // one per site, by flat index
    std::uint64_t seed_used = 0;
    int realization_index = 0;
};

// Draws the i.i.d. potential for one realization. The value at a site is a
// pure function of (base_seed, realization_index, site coordinates), so the
// stream is identical across platforms, call orders and worker counts, and
// the potential of a sub-box is the literal restriction of the enclosing
// box's potential.
Potential sample_potential(const LatticeCube& cube, const DisorderSpec& spec,
                           int realization_index);

// Single-site draw; sample_potential is this applied to every site.
double sample_site_value(const DisorderSpec& spec, int realization_index,
                         std::span<const int> coords);

}  // namespace anderson
