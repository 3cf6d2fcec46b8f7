#pragma once

// Shared presentation sources used across the suites.

namespace fx {

// Star with countably many leaves.
inline const char* kInfStar =
    "(tuple (x) (graph (vertices c) (class (mult w) (graph (vertices l) (edges (l c))))))";

// Complete bipartite K_{2,inf}.
inline const char* kK2Inf =
    "(tuple (x) (graph (vertices a b)"
    " (class (mult w) (graph (vertices u) (edges (u a) (u b))))))";

// K_{2,inf} minus one edge: one former common leaf keeps only its edge to a.
inline const char* kK2InfMinusE =
    "(tuple (x) (graph (vertices a b)"
    " (class (mult w) (graph (vertices u) (edges (u a) (u b))))"
    " (class (mult 1) (graph (vertices up) (edges (up a))))))";

// Countable disjoint union of infinite stars.
inline const char* kOmegaStars =
    "(graph (vertices)"
    " (class (mult w) (graph (vertices c) (class (mult w) (graph (vertices l) (edges (l c)))))))";

// Spider T: omega legs of length 1 and omega legs of length 2, one center.
inline const char* kSpiderT =
    "(tuple (x) (graph (vertices c)"
    " (class (mult w) (graph (vertices u) (edges (u c))))"
    " (class (mult w) (graph (vertices v1 v2) (edges (v1 c) (v1 v2))))))";

// Spider T': omega legs of length 2 only.
inline const char* kSpiderTPrime =
    "(tuple (x) (graph (vertices c)"
    " (class (mult w) (graph (vertices v1 v2) (edges (v1 c) (v1 v2))))))";

inline const char* kTriangle =
    "(graph (vertices a b c) (edges (a b) (a c) (b c)))";

// Infinite star presented with a redundant depth-2 nesting of the leaf.
inline const char* kNestedStar =
    "(tuple (x) (graph (vertices c)"
    " (class (mult 1) (graph (vertices)"
    "   (class (mult w) (graph (vertices l) (edges (l c))))))))";

} // namespace fx
