#pragma once

#include "lsi/types.hpp"

namespace lsi {

/// Radical inverse of index (>= 1) in the given base.
double radical_inverse(long long index, int base);

/// Point index of the Halton sequence in [0,1)^dim; coordinate d uses the
/// d-th prime as base. Index is 1-based.
Vec halton_point(long long index, int dim);

/// count Halton points in [0,1)^dim, indices start+1 .. start+count.
std::vector<Vec> halton_sequence(int count, int dim, long long start = 0);

/// Scale a unit-cube point into a box.
Vec scale_to_box(const Vec& unit, const Box& box);

}  // namespace lsi
