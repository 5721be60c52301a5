// Distances, a geodesic midpoint and the inductive mean of three small
// matrices, comparing the Thompson midpoint with the Riemannian one.
#include <cstdio>

#include "spdcone/spdcone.hpp"

using namespace spdcone;

int main() {
  Rng rng(42);
  const SpdMatrix x = random_spd(6, 10.0, rng);
  const SpdMatrix y = random_spd(6, 10.0, rng);
  const SpdMatrix z = random_spd(6, 10.0, rng);

  const PencilExtremes e = extreme_pair(x, y);
  std::printf("alpha %.6g  beta %.6g\n", e.alpha, e.beta);
  std::printf("d_T %.6g  d_H %.6g  d_2 %.6g\n", thompson_distance(x, y), hilbert_distance(x, y),
              riemannian_distance(x, y));

  const SpdMatrix star = star_geodesic(x, y, 0.5);
  const SpdMatrix riem = riemannian_geodesic(x, y, 0.5);
  std::printf("d_T(X, X*Y) %.6g  d_T(X*Y, Y) %.6g\n", thompson_distance(x, star), thompson_distance(star, y));
  std::printf("d_T(X*Y, X#Y) %.6g\n", thompson_distance(star, riem));

  MeanProblem problem{{x, y, z}, std::nullopt, {}};
  const MeanResult r = inductive_mean(problem);
  std::printf("mean: cycles %lld  residual %.3g  certified %s\n", r.cycles_used, r.residual_norm,
              r.certified ? "yes" : "no");
  for (const auto* p : {&x, &y, &z}) std::printf("  d_T(M, Y_j) %.6g\n", thompson_distance(r.mean, *p));
  return 0;
}
