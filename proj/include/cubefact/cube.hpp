#pragma once
// Bit-level Q_d primitives. A vertex of Q_d is a d-bit integer where bit
// (i-1) marks the presence of element i; an edge flips exactly one bit.
// Directions are 1-indexed throughout the public API; bit positions are
// 0-indexed and stay inside this header.

#include <bit>
#include <cstdint>
#include <string>
#include <utility>

#include "cubefact/errors.hpp"

namespace cubefact {

using Vertex = std::uint32_t;

// Hard cap so 2^d vertex tables stay comfortably in memory.
inline constexpr int kMaxDimension = 24;

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline void check_dimension(int d) {
    if (d < 1 || d > kMaxDimension) {
        throw PreconditionError("dimension out of range [1," + std::to_string(kMaxDimension) +
                                "]: " + std::to_string(d));
    }
}

inline Vertex vertex_count(int d) { return Vertex{1} << d; }

inline void check_vertex(Vertex v, int d) {
    if (v >= vertex_count(d)) {
        throw PreconditionError("vertex " + std::to_string(v) + " out of range for Q_" +
                                std::to_string(d));
    }
}

inline void check_direction(int dir, int d) {
    if (dir < 1 || dir > d) {
        throw PreconditionError("direction " + std::to_string(dir) + " out of range for Q_" +
                                std::to_string(d));
    }
}

inline Vertex direction_mask(int dir) { return Vertex{1} << (dir - 1); }

inline Parity parity(Vertex v) {
    return (std::popcount(v) & 1) != 0 ? Parity::odd : Parity::even;
}

inline bool is_even_vertex(Vertex v) { return (std::popcount(v) & 1) == 0; }

// Flip coordinate `dir`; involutive for every direction.
inline Vertex neighbor(Vertex v, int dir, int d) {
    check_direction(dir, d);
    return v ^ direction_mask(dir);
}

// The unique i with u XOR v = 2^(i-1).
inline int edge_direction(Vertex u, Vertex v) {
    const Vertex diff = u ^ v;
    if (diff == 0 || !std::has_single_bit(diff)) {
        throw NotAnEdgeError("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                             " do not span an edge");
    }
    return std::countr_zero(diff) + 1;
}

// Q_{k+l} viewed as copies of one block indexed by the other: the Q_k block
// occupies the low k bits (directions 1..k), the Q_l block the high bits
// (directions k+1..k+l).
inline Vertex compose_vertex(Vertex low, Vertex high, int k) {
    if (k < 0 || k > kMaxDimension || low >= (Vertex{1} << k)) {
        throw PreconditionError("low part " + std::to_string(low) + " out of range for k=" +
                                std::to_string(k));
    }
    if (high >= (Vertex{1} << (kMaxDimension - k))) {
        throw PreconditionError("high part " + std::to_string(high) + " out of range for k=" +
                                std::to_string(k));
    }
    return low | (high << k);
}

inline std::pair<Vertex, Vertex> decompose_vertex(Vertex v, int k) {
    return {v & ((Vertex{1} << k) - 1), v >> k};
}

inline Vertex low_part(Vertex v, int k) { return v & ((Vertex{1} << k) - 1); }
inline Vertex high_part(Vertex v, int k) { return v >> k; }

}  // namespace cubefact
