#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qrep/qform.hpp"

namespace qrep {

// |{v : q(v) = a}| by the closed pre-image table (zero vector included for
// a = 0). For odd dimension 2m+1 the +-sign of f^2m +- f^m applies iff
// (-1)^m det(q) a is a square.
std::int64_t count_preimage(const QuadraticForm& q, std::uint32_t a);

// All tuples (u, v) in V_a x V_b with u + v = w, for a 2-dimensional form and
// w != 0. Solves q(u) = a against the linear constraint
// b_q(u, w) = q(w) + a - b by eliminating the first coordinate whose linear
// coefficient is nonzero; at most two solutions, sorted by index of u.
std::vector<std::pair<Vector, Vector>> decompose_sum(const QuadraticForm& q, const Vector& w,
                                                     std::uint32_t a, std::uint32_t b);

// Number of w in V_a + V_b with a unique decomposition (0 when ab is not a
// square). k = f+1 anisotropic / f-1 isotropic.
std::int64_t unique_decomposition_count(const QuadraticForm& q, std::uint32_t a,
                                        std::uint32_t b);

// |V_a + V_b| for a 2-dimensional form, a, b nonzero.
std::int64_t sumset_size(const QuadraticForm& q, std::uint32_t a, std::uint32_t b);

// Whether some w in V_1 + V_1 has q(w) = a, for a 2-dimensional form
// representing 1: det(q)(4a - a^2) a square (odd char), or
// Arf(q) + 1/a in wp(F) (char 2).
bool v1v1_reachable(const QuadraticForm& q, std::uint32_t a);

// |O(q)| over the finite field: 2 f^(m^2) prod(f^2i - 1) in odd dimension
// 2m+1; 2 f^(m(m-1)) (f^m -+ 1) prod(f^2i - 1) in even dimension (minus for
// the hyperbolic type). Exact in both characteristics; dim 1 gives 2.
std::int64_t orthogonal_group_order(const QuadraticForm& q);

// t_k: number of totally isotropic subspaces of dimension k in {1, 2}.
// t_1 is closed-form; t_2 is an exact enumeration under the vertex cap.
std::int64_t totally_isotropic_count(const QuadraticForm& q, int k,
                                     std::uint64_t cap = kDefaultVertexCap);

} // namespace qrep
