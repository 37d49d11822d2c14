#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracle_helpers.hpp"
#include "qtunnel/qtunnel.hpp"

using namespace qtunnel;

namespace {
const RectDoubleBarrier kRefRect{5.0, 5.0, {0.7, 0.0}, {0.067}};
const DeltaDoubleBarrier kRefDelta{3.0, {2.3, 0.5131}, {0.067}};
}  // namespace

TEST_CASE("reference rectangular structure below half the barrier top",
          "[resonance]") {
  const auto res = find_resonances(kRefRect, 0.01, 0.5);
  // Two metastable well levels sit in this window; the lowest matches the
  // published resonance energy.
  REQUIRE(res.size() == 2);
  CHECK(res[0].energy == Catch::Approx(0.1194).margin(0.0005));
  CHECK(res[1].energy == Catch::Approx(0.44690).margin(0.0005));
  CHECK(res[0].index == 0);
  CHECK(res[1].index == 1);
  for (const ResonanceResult& r : res) {
    CHECK(std::abs(r.t_res_sq - 1.0) < 1e-9);
    CHECK(r.residual < 1e-9);
    CHECK_FALSE(r.divergent);
  }
}

TEST_CASE("reference delta structure resonance", "[resonance]") {
  const auto res = find_resonances(kRefDelta, 0.05, 2.5);
  REQUIRE_FALSE(res.empty());
  CHECK(res.front().energy == Catch::Approx(0.4622).margin(0.001));
  CHECK(res.front().residual < 1e-9);
}

TEST_CASE("strong deltas approach the closed infinite-well level",
          "[resonance]") {
  const DeltaDoubleBarrier s{3.0, {500.0, 0.0}, {0.067}};
  const auto res = find_resonances(s);
  REQUIRE_FALSE(res.empty());
  const double expected =
      std::numbers::pi * std::numbers::pi * h2m(s.mass) / (3.0 * 3.0);
  CHECK(std::abs(res.front().energy - expected) / expected < 0.01);
}

TEST_CASE("every accepted root lies in a sign-change cell of the scan grid",
          "[resonance]") {
  const auto check_structure = [](const auto& s, double lo, double hi) {
    const auto res = find_resonances(s, lo, hi);
    REQUIRE_FALSE(res.empty());
    const int n = 2000;
    for (const ResonanceResult& r : res) {
      const int cell = static_cast<int>((r.energy - lo) / ((hi - lo) / (n - 1)));
      const double e_a = lo + cell * (hi - lo) / (n - 1);
      const double e_b = lo + (cell + 1) * (hi - lo) / (n - 1);
      const double f_a = resonance_residual(s, e_a);
      const double f_b = resonance_residual(s, e_b);
      CHECK(((f_a < 0.0) != (f_b < 0.0)));
    }
  };
  check_structure(kRefRect, 0.01, 0.5);
  check_structure(kRefDelta, 0.05, 2.5);
}

TEST_CASE("real-potential roots are local minima of |D(E)|^2", "[resonance]") {
  const DeltaDoubleBarrier real_delta{3.0, {2.3, 0.0}, {0.067}};
  const auto rect_res = find_resonances(kRefRect, 0.01, 0.5);
  for (const ResonanceResult& r : rect_res) {
    const auto d2 = [&](double e) { return std::norm(d_of_k(kRefRect, e)); };
    CHECK(std::abs(oracle::refine_local_min(d2, r.energy, 5e-4) - r.energy) <
          1e-6);
  }
  const auto delta_res = find_resonances(real_delta, 0.05, 2.5);
  for (const ResonanceResult& r : delta_res) {
    const auto d2 = [&](double e) { return std::norm(d_of_k(real_delta, e)); };
    CHECK(std::abs(oracle::refine_local_min(d2, r.energy, 5e-3) - r.energy) <
          1e-6);
  }
}

TEST_CASE("resonance energies move continuously with the imaginary part",
          "[resonance]") {
  const DeltaDoubleBarrier a{3.0, {2.3, 0.25}, {0.067}};
  const DeltaDoubleBarrier b{3.0, {2.3, 0.2501}, {0.067}};
  const double e_a = find_resonance_near(a, 0.46).energy;
  const double e_b = find_resonance_near(b, 0.46).energy;
  CHECK(std::abs(e_a - e_b) < 1e-3);

  const RectDoubleBarrier ra{5.0, 5.0, {0.7, 1e-5}, {0.067}};
  const RectDoubleBarrier rb{5.0, 5.0, {0.7, 1.1e-4}, {0.067}};
  CHECK(std::abs(find_resonance_near(ra, 0.119).energy -
                 find_resonance_near(rb, 0.119).energy) < 1e-3);
}

TEST_CASE("maximum-selection sign holds at accepted roots", "[resonance]") {
  const auto check = [](const auto& s, double lo, double hi) {
    for (const ResonanceResult& r : find_resonances(s, lo, hi)) {
      const MN c = mn(detail::uvw_of(s, r.energy));
      const double hyp = std::hypot(c.m, c.n);
      const Kinematics kin = kinematics(r.energy, detail::mass_of(s));
      const double phase = 2.0 * kin.k * detail::well_width_of(s);
      CHECK(std::abs(std::sin(phase) + c.m / hyp) < 1e-9);
    }
  };
  check(kRefRect, 0.01, 0.5);
  check(kRefDelta, 0.05, 2.5);
  check(RectDoubleBarrier{5.0, 5.0, {0.7, -2e-4}, {0.067}}, 0.01, 0.5);
}

TEST_CASE("window without a transmission maximum yields an empty list",
          "[resonance]") {
  CHECK(find_resonances(kRefRect, 0.2, 0.25).empty());
}

TEST_CASE("max_count keeps the lowest energies", "[resonance]") {
  const auto all = find_resonances(kRefRect);
  REQUIRE(all.size() >= 4);
  const auto two = find_resonances(kRefRect, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].energy == all[0].energy);
  CHECK(two[1].energy == all[1].energy);
}

TEST_CASE("continuation solve picks the maximum nearest the seed",
          "[resonance]") {
  const ResonanceResult r = find_resonance_near(kRefRect, 0.12);
  CHECK(r.energy == Catch::Approx(0.1194).margin(0.0005));
  const ResonanceResult r2 = find_resonance_near(kRefRect, 0.45);
  CHECK(r2.energy == Catch::Approx(0.44690).margin(0.0005));
}

TEST_CASE("degenerate structure has no trackable maximum", "[resonance]") {
  const DeltaDoubleBarrier empty{3.0, {0.0, 0.0}, {0.067}};
  CHECK(find_resonances(empty, 0.1, 1.0).empty());
  CHECK_THROWS_AS(find_resonance_near(empty, 0.5), SolverError);
}

TEST_CASE("window validation", "[resonance]") {
  CHECK_THROWS_AS(find_resonances(kRefRect, -0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(find_resonances(kRefRect, 0.5, 0.1), std::domain_error);
}
