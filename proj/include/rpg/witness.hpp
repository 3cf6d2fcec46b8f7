#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rpg/presentation.hpp"

namespace rpg {

enum class Mode { WEAK, STRONG };

inline const char* mode_name(Mode m) { return m == Mode::WEAK ? "weak" : "strong"; }

// Path of (class, copy) steps down the target structure, relative to an
// enclosing anchor. The root anchor is the target root, so entries reached
// only through empty anchors hold root-relative (absolute) paths; entries
// inside tail bodies stay relative to their fresh copy.
using RelPath = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

struct CopyMap;

// Uniform rule: source copies i >= from map into fresh copy
// offset + stride*(i - from) of target class cls below base; one source copy
// per fresh target copy, all via the same body.
struct Tail {
    std::uint64_t from = 0;
    RelPath base;
    std::uint32_t cls = 0;
    std::uint64_t offset = 0;
    std::uint64_t stride = 1;
    std::vector<CopyMap> body; // exactly one entry (breaks the type cycle)
};

// Explicit assignment of one source copy below enclosing ++ anchor.
struct CopyException {
    std::uint64_t copy = 0;
    RelPath anchor;
    std::vector<CopyMap> body; // exactly one entry
};

struct ClassPlan {
    std::vector<CopyException> exceptions; // sorted by copy
    std::optional<Tail> tail;
};

// Image of one source level copy: vertex images relative to the current
// anchor plus one plan per source class.
struct CopyMap {
    std::map<std::string, Location> vmap;
    std::vector<ClassPlan> plans;
};

// Finitely-represented injective homomorphism between the realizations of
// two (normalized) presentations.
struct EmbeddingWitness {
    CopyMap root;
};

// Identity self-embedding; also the inclusion into any presentation obtained
// by raising class multiplicities.
EmbeddingWitness identity_witness(const Presentation& p);

// Total evaluation; throws InputError if the witness does not cover src.
Location apply_witness(const EmbeddingWitness& w, const Location& src);

// Composition outer . inner (inner: A -> B, outer: B -> C).
EmbeddingWitness compose(const EmbeddingWitness& outer, const EmbeddingWitness& inner);

struct Instantiated {
    bool ok = false;
    std::string reason;
    FiniteGraph src;
    FiniteGraph dst;
    std::map<Location, Location> vmap;
    std::uint64_t n_src = 0;
    std::uint64_t n_dst = 0;
};

// Materialize the witness on truncations: source at n, target at the level
// the tails demand. Checks injectivity, homomorphism and (strong) induced
// image exhaustively on the finite graphs.
Instantiated instantiate_witness(const EmbeddingWitness& w, const GraphTuple& g_norm,
                                 const GraphTuple& h_norm, std::uint64_t n, Mode mode);

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

// Structural and symbolic validation (level by level, tails by
// representatives) plus exhaustive instantiation checks on small
// truncations. Independent of any search that produced w.
VerifyResult verify_witness(const EmbeddingWitness& w, const GraphTuple& g_norm,
                            const GraphTuple& h_norm, Mode mode);

} // namespace rpg
