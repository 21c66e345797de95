#include "lsi/halton.hpp"

namespace lsi {

namespace {
int nth_prime(int n) {  // 0-based
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                               31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  if (n < 0 || n >= static_cast<int>(std::size(primes)))
    throw std::invalid_argument("halton: dimension too large");
  return primes[n];
}
}  // namespace

double radical_inverse(long long index, int base) {
  if (index < 1) throw std::invalid_argument("radical_inverse: index must be >= 1");
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

Vec halton_point(long long index, int dim) {
  Vec p(dim);
  for (int d = 0; d < dim; ++d) p[d] = radical_inverse(index, nth_prime(d));
  return p;
}

std::vector<Vec> halton_sequence(int count, int dim, long long start) {
  std::vector<Vec> out;
  out.reserve(count);
  for (int i = 1; i <= count; ++i) out.push_back(halton_point(start + i, dim));
  return out;
}

Vec scale_to_box(const Vec& unit, const Box& box) {
  if (unit.size() != box.lo.size())
    throw std::invalid_argument("scale_to_box: dimension mismatch");
  return box.lo.array() + unit.array() * (box.hi - box.lo).array();
}

}  // namespace lsi
