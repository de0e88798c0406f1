#include "chebproj/mesh_gen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace chebproj {

namespace {

// one splitmix64 step; the standard finalizer constants
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::vector<double> from_lengths(const MeshSpec& spec, const std::vector<double>& len) {
    double total = 0.0;
    for (double l : len) total += l;
    std::vector<double> bp;
    bp.reserve(len.size() + 1);
    bp.push_back(spec.a);
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < len.size(); ++j) {
        acc += len[j];
        bp.push_back(spec.a + (spec.b - spec.a) * (acc / total));
    }
    bp.push_back(spec.b);
    return bp;
}

}  // namespace

MeshFamily mesh_family_from_name(const std::string& name) {
    if (name == "uniform") return MeshFamily::Uniform;
    if (name == "random-uniform") return MeshFamily::RandomUniform;
    if (name == "geometric") return MeshFamily::Geometric;
    if (name == "graded") return MeshFamily::Graded;
    if (name == "two-scale") return MeshFamily::TwoScale;
    throw std::invalid_argument("unknown mesh family: " + name);
}

const char* mesh_family_name(MeshFamily family) {
    switch (family) {
        case MeshFamily::Uniform: return "uniform";
        case MeshFamily::RandomUniform: return "random-uniform";
        case MeshFamily::Geometric: return "geometric";
        case MeshFamily::Graded: return "graded";
        case MeshFamily::TwoScale: return "two-scale";
    }
    throw std::invalid_argument("unknown mesh family value");
}

std::vector<double> generate_breakpoints(const MeshSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("mesh: need at least two subintervals");
    if (!(spec.b > spec.a)) throw std::invalid_argument("mesh: empty interval");
    const int n = spec.n;

    std::vector<double> bp;
    switch (spec.family) {
        case MeshFamily::Uniform: {
            for (int j = 0; j <= n; ++j)
                bp.push_back(spec.a + (spec.b - spec.a) * j / double(n));
            bp.back() = spec.b;
            break;
        }
        case MeshFamily::RandomUniform: {
            std::mt19937_64 rng(spec.seed);
            std::uniform_real_distribution<double> gap(0.5, 1.5);
            std::vector<double> len(std::size_t(n), 0.0);
            for (double& l : len) l = gap(rng);
            bp = from_lengths(spec, len);
            break;
        }
        case MeshFamily::Geometric: {
            if (!(spec.ratio > 0.0)) throw std::invalid_argument("mesh: ratio must be positive");
            std::vector<double> len(std::size_t(n), 0.0);
            // build in log space so extreme ratios degrade gracefully
            for (int j = 0; j < n; ++j)
                len[std::size_t(j)] = std::exp(double(j - n / 2) * std::log(spec.ratio));
            bp = from_lengths(spec, len);
            break;
        }
        case MeshFamily::Graded: {
            if (!(spec.power >= 1.0)) throw std::invalid_argument("mesh: power must be >= 1");
            for (int j = 0; j <= n; ++j)
                bp.push_back(spec.a +
                             (spec.b - spec.a) * std::pow(j / double(n), spec.power));
            bp.back() = spec.b;
            break;
        }
        case MeshFamily::TwoScale: {
            if (!(spec.two_scale_big > 0.0) || !(spec.two_scale_small > 0.0))
                throw std::invalid_argument("mesh: two-scale lengths must be positive");
            std::vector<double> len(std::size_t(n), 0.0);
            for (int j = 0; j < n; ++j)
                len[std::size_t(j)] = (j % 2 == 0) ? spec.two_scale_big : spec.two_scale_small;
            bp = from_lengths(spec, len);
            break;
        }
    }

    for (std::size_t j = 0; j + 1 < bp.size(); ++j)
        if (!(bp[j + 1] > bp[j]))
            throw std::invalid_argument(
                "mesh: profile collapses intervals below resolvable spacing");
    return bp;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t s1, std::uint64_t s2,
                          std::uint64_t s3) {
    std::uint64_t x = mix(base);
    x = mix(x ^ s1);
    x = mix(x ^ s2);
    x = mix(x ^ s3);
    return x;
}

}  // namespace chebproj
