#include <doctest.h>

#include <cmath>

#include "pssp/error.hpp"
#include "pssp/network.hpp"
#include "pssp/propagation.hpp"
#include "pssp/readout.hpp"
#include "pssp/ssp_core.hpp"
#include "support.hpp"

using namespace pssp;

namespace {

IntensityDistribution simulate(const Instance& inst, const OpticalParams& p) {
  return propagate(build_network(inst), p);
}

}  // namespace

TEST_CASE("tolerance_band examples") {
  const auto inst = Instance::parse({3, 7, 11});
  const auto table = count_subsets_dp(inst);
  const auto clean = simulate(inst, OpticalParams::lossless());

  const auto band = tolerance_band(clean, table);
  CHECK(band.valid);
  CHECK(band.lower == 0.0);
  CHECK(std::abs(band.upper - 0.125) < 1e-15);

  const auto floored = tolerance_band(apply_noise(clean, NoiseModel{1e-4, std::nullopt, 0}), table);
  CHECK(floored.valid);
  CHECK(floored.lower == 1e-4);
  CHECK(floored.upper == doctest::Approx(0.125 + 1e-4).epsilon(1e-14));

  IntensityDistribution flat;
  flat.max_port = 21;
  for (std::int64_t s = 0; s <= 21; ++s) flat.port_intensity[s] = 0.01;
  CHECK_FALSE(tolerance_band(flat, table).valid);
  CHECK_FALSE(tolerance_band(flat, table).contains(0.01));
}

TEST_CASE("classify examples") {
  const auto clean = simulate(Instance::parse({3, 7, 11}), OpticalParams::lossless());

  const auto yes = classify(clean, 0.01, Instance::parse({3, 7, 11}, 14));
  CHECK(yes.answer == Answer::kYes);
  CHECK(yes.mismatches.empty());
  CHECK(yes.ports.size() == 22);

  const auto no = classify(clean, 0.01, Instance::parse({3, 7, 11}, 5));
  CHECK(no.answer == Answer::kNo);

  const auto lossy_inst = Instance::parse({3, 7, 9, 11});
  const auto lossy = simulate(lossy_inst, OpticalParams::measured_default());
  const auto band = tolerance_band(lossy, count_subsets_dp(lossy_inst));
  REQUIRE(band.valid);
  const auto graded = classify(lossy, 0.5 * (band.lower + band.upper), lossy_inst);
  CHECK(graded.mismatches.empty());

  const auto untargeted = classify(clean, 0.01, Instance::parse({3, 7, 11}));
  CHECK_FALSE(untargeted.answer.has_value());
  CHECK_THROWS_AS(untargeted.target_answer(), Error);
  CHECK(untargeted.ports.size() == 22);

  CHECK_THROWS_AS(classify(clean, 0.0, Instance::parse({3, 7, 11}, 3)), Error);
}

TEST_CASE("threshold exactly at a port intensity classifies as present") {
  const auto clean = simulate(Instance::parse({3, 7, 11}), OpticalParams::lossless());
  const auto r = classify(clean, 0.125, Instance::parse({3, 7, 11}, 21));
  CHECK(r.answer == Answer::kYes);
  CHECK(r.mismatches.empty());
}

TEST_CASE("read_out picks the band midpoint or gives up") {
  const auto inst = Instance::parse({3, 7, 11}, 10);
  const auto clean = simulate(inst, OpticalParams::lossless());
  const auto r = read_out(clean, inst);
  REQUIRE(r.threshold.has_value());
  CHECK(*r.threshold == doctest::Approx(0.0625));
  CHECK(r.answer == Answer::kYes);

  IntensityDistribution flat;
  flat.max_port = 21;
  for (std::int64_t s = 0; s <= 21; ++s) flat.port_intensity[s] = 0.01;
  const auto lost = read_out(flat, inst);
  CHECK(lost.answer == Answer::kIndeterminate);
  CHECK_FALSE(lost.threshold.has_value());

  const auto forced = read_out(flat, inst, 0.005);
  CHECK(forced.answer == Answer::kYes);
  CHECK(forced.mismatches.size() == 22 - 8);
}

TEST_CASE("property: any threshold inside a valid band grades perfectly") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int valid_bands = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto inst = testing::random_instance(rng, 8, 15);
    const auto table = count_subsets_dp(inst);
    const auto p = trial % 2 ? OpticalParams::measured_default() : OpticalParams::lossless();
    auto dist = simulate(inst, p);
    if (trial % 3 == 0) dist = apply_noise(dist, NoiseModel{1e-3 * u(rng), 100000, 7});
    const auto band = tolerance_band(dist, table);
    if (!band.valid) continue;
    ++valid_bands;
    for (int k = 1; k <= 10; ++k) {
      const double t = band.lower + band.width() * k / 11.0;
      if (t <= 0.0) continue;
      const auto r = classify(dist, t, inst, table);
      CHECK(r.mismatches.empty());
    }
    // Just outside the band at least one port is misread.
    CHECK_FALSE(classify(dist, band.upper * (1 + 1e-9), inst, table).mismatches.empty());
  }
  CHECK(valid_bands > 60);
}

TEST_CASE("property: lossless read-out decides like the exact solver (N <= 12)") {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testing::random_instance(rng, 12, 30);
    const auto dist = simulate(inst, OpticalParams::lossless());
    const auto table = count_subsets_dp(inst);
    const double t = std::ldexp(1.0, -static_cast<int>(inst.size())) *
                     std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    for (std::int64_t target = 0; target <= inst.total(); ++target) {
      const auto with_target = inst.with_target(target);
      const auto r = classify(dist, t, with_target, table);
      CHECK((r.target_answer() == Answer::kYes) == decide(with_target, table));
    }
  }
}

TEST_CASE("property: band width shrinks with noise floor and loss") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = testing::random_instance(rng, 8, 12);
    const auto table = count_subsets_dp(inst);
    const auto net = build_network(inst);

    auto p = OpticalParams::measured_default();
    p.divert_crosstalk = true;
    const auto base = propagate(net, p);
    // With no absent port the lower edge is pinned at 0 and a floor only
    // lifts the upper edge, so the floor check needs at least one gap.
    bool has_gap = false;
    for (std::int64_t s = 0; s <= inst.total(); ++s) has_gap |= !table.achievable(s);
    double prev = tolerance_band(base, table).width();
    for (double floor : {1e-5, 1e-4, 1e-3}) {
      if (!has_gap) break;
      const double w = tolerance_band(apply_noise(base, NoiseModel{floor, std::nullopt, 0}), table).width();
      CHECK(w <= prev + 1e-15);
      prev = w;
    }

    for (int field = 0; field < 4; ++field) {
      auto more = p;
      switch (field) {
        case 0: more.converge_residual += 0.05; break;
        case 1: more.converge_insertion_loss += 0.05; break;
        case 2: more.propagation_loss_db_per_node *= 4; break;
        case 3: more.pass_crosstalk *= 10; break;
      }
      const auto w0 = tolerance_band(base, table).width();
      const auto w1 = tolerance_band(propagate(net, more), table).width();
      CHECK(w1 <= w0 + 1e-15);
    }
  }
}

TEST_CASE("max_reliable_size") {
  SUBCASE("lossless without noise reaches the cap") {
    const auto r = max_reliable_size(OpticalParams::lossless(), NoiseModel{});
    CHECK(r.n == kReliableSizeCap);
    CHECK(r.cap_reached);
  }
  SUBCASE("a floor above the N=1 signal gives zero") {
    const auto r = max_reliable_size(OpticalParams::lossless(), NoiseModel{0.6, std::nullopt, 0});
    CHECK(r.n == 0);
    CHECK_FALSE(r.cap_reached);
  }
  SUBCASE("measured-junction optics with a floor is finite and shrinks as the floor grows") {
    const auto p = OpticalParams::measured_default();
    const auto a = max_reliable_size(p, NoiseModel{1e-4, std::nullopt, 0});
    CHECK(a.n > 0);
    CHECK_FALSE(a.cap_reached);
    int prev = a.n;
    for (double floor : {3e-4, 1e-3, 1e-2, 1e-1}) {
      const auto r = max_reliable_size(p, NoiseModel{floor, std::nullopt, 0});
      CHECK(r.n <= prev);
      prev = r.n;
    }
  }
}

TEST_CASE("band reliability rule") {
  CHECK(band_is_reliable(ThresholdBand{0.0, 0.1, true}, 0.05));
  CHECK_FALSE(band_is_reliable(ThresholdBand{0.0, 0.1, true}, 0.1));
  CHECK_FALSE(band_is_reliable(ThresholdBand{0.2, 0.1, false}, 0.0));
}
