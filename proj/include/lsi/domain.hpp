#pragma once

#include "lsi/types.hpp"

namespace lsi {

enum class SystemKind { Pendulum, HenonHeiles };

/// Analytic benchmark system with reference Lagrangian, energy, and
/// equations of motion. Pendulum: n=1, L = q̇²/2 + cos q.
/// Hénon–Heiles: n=2, L = |q̇|²/2 − V(q) with
/// V(q) = |q|²/2 + α(q₁²q₂ − q₂³/3).
struct BenchmarkSystem {
  SystemKind kind = SystemKind::Pendulum;
  double alpha = 0.0;  // Hénon–Heiles only, must be nonzero there

  static BenchmarkSystem pendulum() { return {SystemKind::Pendulum, 0.0}; }
  static BenchmarkSystem henon_heiles(double alpha);

  int dim() const { return kind == SystemKind::Pendulum ? 1 : 2; }
};

double reference_lagrangian(const BenchmarkSystem& sys, const Vec& q, const Vec& qdot);
double reference_energy(const BenchmarkSystem& sys, const Vec& q, const Vec& qdot);
Vec reference_acceleration(const BenchmarkSystem& sys, const Vec& q);

/// Potential energy V(q); the kinetic part is |q̇|²/2 for both systems.
double reference_potential(const BenchmarkSystem& sys, const Vec& q);

}  // namespace lsi
