#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rpg/presentation.hpp"

namespace rpg {

// Ground truth stays trustworthy by refusing oversized inputs.
struct OracleCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kOracleVertexCap = 40;

struct FiniteMatch {
    std::map<Location, Location> vmap;
};

// Complete backtracking subgraph search with degree and neighborhood pruning;
// induced additionally preserves non-edges. Deterministic.
std::optional<FiniteMatch> finite_embed(const FiniteGraph& g, const FiniteGraph& h, bool induced);

std::optional<FiniteMatch> finite_iso(const FiniteGraph& g, const FiniteGraph& h);

std::vector<FiniteGraph> finite_components(const FiniteGraph& g);

FiniteGraph remove_finite_vertices(const FiniteGraph& g, const std::vector<Location>& drop);

struct RandomLimits {
    int max_depth = 2;
    int max_part = 4;
    int max_classes = 3;
};

// Deterministic per seed; always a valid tuple within the limits.
GraphTuple random_presentation(std::uint64_t seed, const RandomLimits& limits = {});

} // namespace rpg
