#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "eznav/circumnav.hpp"
#include "eznav/engagement_oracle.hpp"
#include "eznav/ez_pursuit.hpp"
#include "eznav/ez_turret.hpp"

namespace {

using eznav::Angle;
using eznav::Point2;

struct Pose {
  Point2 p;
  double psi;
};

std::vector<Pose> random_poses(std::size_t n, double radius) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-radius, radius);
  std::uniform_real_distribution<double> ang(-eznav::kPi, eznav::kPi);
  std::vector<Pose> out(n);
  for (auto& pose : out) {
    pose = {{coord(rng), coord(rng)}, ang(rng)};
  }
  return out;
}

void BM_RhoFast(benchmark::State& state) {
  const eznav::PursuerThreat t{{0.0, 0.0}, 0.7, 1.0, 0.25};
  double xi = -eznav::kPi;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eznav::rho(Angle::radians(xi), t));
    xi = xi > 3.0 ? -eznav::kPi : xi + 1e-3;
  }
}
BENCHMARK(BM_RhoFast);

void BM_RhoSlow(benchmark::State& state) {
  const eznav::PursuerThreat t{{0.0, 0.0}, 1.5, 1.0, 0.25};
  double xi = -eznav::kPi;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eznav::rho(Angle::radians(xi), t));
    xi = xi > 3.0 ? -eznav::kPi : xi + 1e-3;
  }
}
BENCHMARK(BM_RhoSlow);

void BM_SignedClearanceJet(benchmark::State& state) {
  const eznav::PursuerThreat t{{0.0, 0.0}, 0.7, 1.0, 0.25};
  const auto poses = random_poses(1024, 4.0);
  std::size_t i = 0;
  for (auto _ : state) {
    const Pose& pose = poses[i++ & 1023];
    benchmark::DoNotOptimize(eznav::signed_clearance_jet(pose.p, pose.psi, t));
  }
}
BENCHMARK(BM_SignedClearanceJet);

void BM_PursuitOracle(benchmark::State& state) {
  const eznav::PursuerThreat t{{0.0, 0.0}, 0.7, 1.0, 0.25};
  const auto poses = random_poses(1024, 3.0);
  std::size_t i = 0;
  for (auto _ : state) {
    const Pose& pose = poses[i++ & 1023];
    benchmark::DoNotOptimize(eznav::pursuit_capture_possible(pose.p, Angle::radians(pose.psi), t));
  }
}
BENCHMARK(BM_PursuitOracle);

void BM_TurretMembership(benchmark::State& state) {
  const eznav::TurretThreat t{{0.0, 0.0}, 0.5, 0.5, 1.0};
  const auto poses = random_poses(1024, 2.0);
  std::size_t i = 0;
  for (auto _ : state) {
    const Pose& pose = poses[i++ & 1023];
    benchmark::DoNotOptimize(eznav::ez_contains_turret(pose.p, Angle::radians(pose.psi), t));
  }
}
BENCHMARK(BM_TurretMembership);

void BM_TurretClearanceJet(benchmark::State& state) {
  const eznav::TurretThreat t{{0.0, 0.0}, 0.5, 0.5, 1.0};
  const auto poses = random_poses(1024, 2.0);
  std::size_t i = 0;
  for (auto _ : state) {
    const Pose& pose = poses[i++ & 1023];
    benchmark::DoNotOptimize(eznav::turret_clearance_jet(pose.p, pose.psi, t));
  }
}
BENCHMARK(BM_TurretClearanceJet);

void BM_TurretOracle(benchmark::State& state) {
  const eznav::TurretThreat t{{0.0, 0.0}, 0.5, 0.5, 1.0};
  const auto poses = random_poses(1024, 2.0);
  std::size_t i = 0;
  for (auto _ : state) {
    const Pose& pose = poses[i++ & 1023];
    benchmark::DoNotOptimize(eznav::turret_neutralization_possible(pose.p, Angle::radians(pose.psi), t));
  }
}
BENCHMARK(BM_TurretOracle);

void BM_Circumnavigate(benchmark::State& state) {
  const eznav::CircumnavSpec spec{"Reach", 1.25};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eznav::circumnavigate({-4.0, 0.1}, {4.0, -0.2}, {0.0, 0.0}, spec, 1.0));
  }
}
BENCHMARK(BM_Circumnavigate);

}  // namespace
