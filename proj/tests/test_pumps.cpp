#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "spdc/pumps.hpp"

using namespace spdc;
using cplx = std::complex<double>;

namespace {

// Brute-force e_m over all size-m subsets, 2^N products.
std::vector<cplx> esf_bruteforce(const std::vector<cplx>& zs) {
  const size_t n = zs.size();
  std::vector<cplx> e(n + 1, 0.0);
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    cplx prod = 1.0;
    int bits = 0;
    for (size_t k = 0; k < n; ++k)
      if (mask >> k & 1) {
        prod *= zs[k];
        ++bits;
      }
    e[bits] += prod;
  }
  return e;
}

std::vector<Singularity> six_ps_positions() {
  const double rho[6] = {0.65, 1.85, 1.06, 0.54, 1.53, 1.24};
  std::vector<Singularity> s;
  for (int k = 1; k <= 6; ++k)
    s.push_back({rho[k - 1], k * std::numbers::pi / 3.0});
  return s;
}

}  // namespace

TEST_CASE("elementary_symmetric basics") {
  CHECK(elementary_symmetric({}).size() == 1);
  CHECK(elementary_symmetric({})[0] == cplx(1.0, 0.0));

  std::vector<cplx> zs{{1.0, 0.0}, {0.0, 1.0}};
  auto e = elementary_symmetric(zs);
  REQUIRE(e.size() == 3);
  CHECK(std::abs(e[0] - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(e[1] - cplx(1, 1)) < 1e-15);
  CHECK(std::abs(e[2] - cplx(0, 1)) < 1e-15);
}

TEST_CASE("elementary_symmetric matches subset-product brute force") {
  SUBCASE("the six reference positions") {
    auto sings = six_ps_positions();
    std::vector<cplx> zs;
    for (const auto& s : sings) zs.push_back(std::polar(s.rho, s.phi));
    auto fast = elementary_symmetric(zs);
    auto slow = esf_bruteforce(zs);
    REQUIRE(fast.size() == 7);
    for (size_t m = 0; m < fast.size(); ++m)
      CHECK(std::abs(fast[m] - slow[m]) <= 1e-13 * std::abs(slow[m]));
  }
  SUBCASE("random sets up to N = 8") {
    std::mt19937 gen(42);
    std::uniform_real_distribution<double> mag(0.0, 2.0), ang(0.0, 6.28);
    for (int n = 0; n <= 8; ++n) {
      std::vector<cplx> zs;
      for (int k = 0; k < n; ++k) zs.push_back(std::polar(mag(gen), ang(gen)));
      auto fast = elementary_symmetric(zs);
      auto slow = esf_bruteforce(zs);
      for (size_t m = 0; m < fast.size(); ++m) {
        double scale = std::max(std::abs(slow[m]), 1.0);
        CHECK(std::abs(fast[m] - slow[m]) <= 1e-13 * scale);
      }
    }
  }
}

TEST_CASE("normalize_pump") {
  SUBCASE("single scaled mode") {
    auto p = normalize_pump({{cplx(2.0, 0.0), {0, 0}}});
    REQUIRE(p.components.size() == 1);
    CHECK(std::abs(p.components[0].amplitude - cplx(1.0, 0.0)) < 1e-15);
  }
  SUBCASE("two equal modes") {
    auto p = normalize_pump({{cplx(1, 0), {0, 0}}, {cplx(1, 0), {1, 0}}});
    REQUIRE(p.components.size() == 2);
    for (const auto& c : p.components)
      CHECK(std::abs(c.amplitude) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  }
  SUBCASE("duplicate labels merge before normalizing") {
    auto p = normalize_pump(
        {{cplx(1, 0), {2, 1}}, {cplx(0, 1), {2, 1}}, {cplx(1, 0), {0, 0}}});
    REQUIRE(p.components.size() == 2);
    double power = 0.0;
    for (const auto& c : p.components) power += std::norm(c.amplitude);
    CHECK(power == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("cancellation to zero is a degenerate pump") {
    CHECK_THROWS_AS(
        normalize_pump({{cplx(1, 0), {0, 0}}, {cplx(-1, 0), {0, 0}}}),
        std::domain_error);
  }
}

TEST_CASE("singularity decompositions") {
  SUBCASE("no singularities gives the Gaussian") {
    auto p = singularities_to_lg({}, 1.0);
    REQUIRE(p.components.size() == 1);
    CHECK(p.components[0].mode == ModeIndex{0, 0});
    CHECK(std::abs(std::abs(p.components[0].amplitude) - 1.0) < 1e-14);
  }
  SUBCASE("one on-axis singularity is a pure vortex") {
    std::vector<Singularity> s{{0.0, 0.0}};
    auto p = singularities_to_lg(s, 1.0);
    REQUIRE(p.components.size() == 1);
    CHECK(p.components[0].mode == ModeIndex{1, 0});
    CHECK(std::abs(std::abs(p.components[0].amplitude) - 1.0) < 1e-14);
  }
  SUBCASE("normalization holds for the six-singularity pump") {
    auto p = singularities_to_lg(six_ps_positions(), 1.0);
    REQUIRE(p.components.size() == 7);
    double power = 0.0;
    for (const auto& c : p.components) power += std::norm(c.amplitude);
    CHECK(std::abs(power - 1.0) < 1e-12);
  }
  SUBCASE("decomposition is independent of the pump waist") {
    auto a = singularities_to_lg(six_ps_positions(), 1.0);
    auto b = singularities_to_lg(six_ps_positions(), 2.5);
    REQUIRE(a.components.size() == b.components.size());
    // Amplitudes agree up to a global phase; here the scale factor is real
    // and positive so they agree exactly.
    for (size_t k = 0; k < a.components.size(); ++k)
      CHECK(std::abs(a.components[k].amplitude - b.components[k].amplitude) < 1e-12);
  }
}

TEST_CASE("reconstructed field vanishes at every singularity") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> mag(0.2, 1.8), ang(0.0, 6.28);
  std::vector<std::vector<Singularity>> cases{six_ps_positions()};
  for (int n = 1; n <= 6; ++n) {
    std::vector<Singularity> s;
    for (int k = 0; k < n; ++k) s.push_back({mag(gen), ang(gen)});
    cases.push_back(s);
  }
  for (const auto& sings : cases) {
    auto pump = singularities_to_lg(sings, 1.0);
    double peak = 0.0;
    for (double rho = 0.1; rho < 3.0; rho += 0.13)
      for (double phi = 0.0; phi < 6.28; phi += 0.37)
        peak = std::max(peak, std::abs(pump_field_value(pump, rho, phi)));
    REQUIRE(peak > 0.0);
    for (const auto& s : sings)
      CHECK(std::abs(pump_field_value(pump, s.rho, s.phi)) < 1e-10 * peak);
  }
}

TEST_CASE("pump_field_value pointwise") {
  SUBCASE("Gaussian pump at the origin") {
    auto p = PumpSpec::single({0, 0});
    CHECK(pump_field_value(p, 0.0, 0.0).real() ==
          doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-14));
  }
  SUBCASE("singleton pump equals lg_amplitude") {
    auto p = PumpSpec::single({3, 1});
    for (double rho : {0.4, 1.7})
      for (double phi : {0.0, 1.1}) {
        CHECK(std::abs(pump_field_value(p, rho, phi) -
                       lg_amplitude({3, 1}, 1.0, rho, phi)) < 1e-15);
      }
  }
}

TEST_CASE("pump text serialization") {
  SUBCASE("singularities round trip") {
    auto pump = singularities_to_lg(six_ps_positions(), 1.0);
    std::istringstream in(format_pump_text(pump));
    auto again = parse_pump_text(in, 1.0);
    REQUIRE(again.components.size() == pump.components.size());
    for (size_t k = 0; k < pump.components.size(); ++k)
      CHECK(std::abs(again.components[k].amplitude -
                     pump.components[k].amplitude) < 1e-12);
  }
  SUBCASE("superposition with comments and commas") {
    std::istringstream in(
        "# a two-mode pump\n"
        "type: superposition\n"
        "0, 0, 1.0, 0.0\n"
        "1, 0, 1.0, 0.0  # equal weight\n");
    auto p = parse_pump_text(in);
    REQUIRE(p.components.size() == 2);
    CHECK(std::abs(p.components[0].amplitude) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  }
  SUBCASE("single mode") {
    std::istringstream in("type: single\n-2 1\n");
    auto p = parse_pump_text(in);
    REQUIRE(p.components.size() == 1);
    CHECK(p.components[0].mode == ModeIndex{-2, 1});
  }
  SUBCASE("malformed input is rejected") {
    std::istringstream bad1("type: nonsense\n1 2\n");
    CHECK_THROWS_AS(parse_pump_text(bad1), std::invalid_argument);
    std::istringstream bad2("1 2\n");
    CHECK_THROWS_AS(parse_pump_text(bad2), std::invalid_argument);
    std::istringstream bad3("type: superposition\n0 0 1.0\n");
    CHECK_THROWS_AS(parse_pump_text(bad3), std::invalid_argument);
    CHECK_THROWS_AS(load_pump_file("/nonexistent/path.pump"),
                    std::invalid_argument);
  }
}
