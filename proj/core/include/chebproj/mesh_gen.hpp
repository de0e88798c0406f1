#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chebproj {

/// Partition families used by the experiment harness. The two-scale family
/// alternates long and short intervals to stress the local-length comparisons
/// and the decay fitting; geometric and graded meshes probe strongly
/// non-uniform regimes.
enum class MeshFamily { Uniform, RandomUniform, Geometric, Graded, TwoScale };

/// Accepts "uniform", "random-uniform", "geometric", "graded", "two-scale".
MeshFamily mesh_family_from_name(const std::string& name);
const char* mesh_family_name(MeshFamily family);

/// Recipe for one generated mesh. n counts subintervals (the uniform mesh
/// with n = 4 on [0,1] has breakpoints 0, .25, .5, .75, 1). Only the
/// random-uniform family consumes the seed; the others are deterministic in
/// their parameters.
struct MeshSpec {
    MeshFamily family = MeshFamily::Uniform;
    int n = 8;
    double a = 0.0;
    double b = 1.0;
    std::uint64_t seed = 0;
    double ratio = 2.0;       // geometric: each interval is ratio times the previous
    double power = 2.0;       // graded: breakpoints at a + (b-a) (j/n)^power
    double two_scale_big = 1.0;    // two-scale: alternating relative lengths
    double two_scale_small = 0.125;
};

/// Strictly increasing breakpoints from a to b. Throws std::invalid_argument
/// when the spec is out of range or the requested profile collapses intervals
/// below resolvable spacing (extreme geometric ratios at large n).
std::vector<double> generate_breakpoints(const MeshSpec& spec);

/// Stable 64-bit mixing of a base seed with cell coordinates, used to give
/// every (family, n, trial) cell its own reproducible stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t s1, std::uint64_t s2,
                          std::uint64_t s3);

}  // namespace chebproj
