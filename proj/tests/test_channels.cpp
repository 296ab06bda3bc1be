#include "noisefid/channels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace noisefid;

namespace {

std::vector<double> grid(int n = 11) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(i / double(n - 1));
  return v;
}

ComplexMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("every constructor is CPTP on its grid") {
  for (double v : grid()) {
    CAPTURE(v);
    CHECK(validate_cptp(make_ad(v)).pass);
    CHECK(validate_cptp(make_pd(v)).pass);
    CHECK(validate_cptp(make_depolarizing(v)).pass);
    CHECK(validate_cptp(make_bit_flip(v)).pass);
    CHECK(validate_cptp(make_phase_flip(v)).pass);
    CHECK(validate_cptp(make_bit_phase_flip(v)).pass);
    for (double m : grid(6)) {
      for (double n : grid(6)) {
        CHECK(validate_cptp(make_sgad({v, m, n, 0.4, 1.7})).pass);
      }
    }
  }
  CHECK(validate_cptp(identity_channel()).pass);
}

TEST_CASE("validate_cptp flags a broken set") {
  KrausChannel broken{"broken", {0.9 * gates::identity()}, {}};
  const auto r = validate_cptp(broken);
  CHECK_FALSE(r.pass);
  CHECK(r.max_deviation == doctest::Approx(0.19));
}

TEST_CASE("out-of-domain parameters are rejected") {
  CHECK_THROWS_AS(make_ad(-0.1), ParameterError);
  CHECK_THROWS_AS(make_ad(1.1), ParameterError);
  CHECK_THROWS_AS(make_pd(std::nan("")), ParameterError);
  CHECK_THROWS_AS(make_pauli({0.5, 0.5, 0.5, 0.0}), ParameterError);
  CHECK_THROWS_AS(make_pauli({1.2, -0.2, 0.0, 0.0}), ParameterError);
  CHECK_THROWS_AS(make_sgad({0.5, 0.5, 1.5, 0.5, 0.0}), ParameterError);
  CHECK_THROWS_AS(make_depolarizing(2.0), ParameterError);
}

TEST_CASE("Pauli variants put weight where documented") {
  const auto bf = bit_flip_weights(0.3);
  CHECK(bf.p1 == doctest::Approx(0.7));
  CHECK(bf.p2 == doctest::Approx(0.3));
  const auto pf = phase_flip_weights(0.3);
  CHECK(pf.p4 == doctest::Approx(0.3));
  const auto bpf = bit_phase_flip_weights(0.3);
  CHECK(bpf.p3 == doctest::Approx(0.3));
  const auto dep = depolarizing_weights(0.3);
  CHECK(dep.p1 == doctest::Approx(0.7));
  CHECK(dep.p2 == doctest::Approx(0.1));
  CHECK(dep.p3 == doctest::Approx(0.1));
  CHECK(dep.p4 == doctest::Approx(0.1));
  // sigma_2 is iY, not Y.
  const auto ops = make_pauli({0.0, 0.0, 1.0, 0.0}).operators;
  bool found = false;
  for (const auto& e : ops) found = found || approx_equal(e, gates::iy(), 1e-15);
  CHECK(found);
}

TEST_CASE("SGAD reduces to AD operator-wise") {
  for (double eta : grid(21)) {
    const auto sgad = make_sgad({eta, 0.0, 0.0, 1.0, 0.3}).operators;
    const auto ad = make_ad(eta).operators;
    REQUIRE(sgad.size() == 4);
    CHECK(max_abs_diff(sgad[0], ad[0]) < 1e-12);
    CHECK(max_abs_diff(sgad[1], ad[1]) < 1e-12);
    CHECK(sgad[2].norm() < 1e-12);
    CHECK(sgad[3].norm() < 1e-12);
  }
}

TEST_CASE("SGAD squeezing phase sits on the mu term") {
  const auto ops = make_sgad({0.2, 0.5, 0.3, 0.0, std::numbers::pi / 2}).operators;
  CHECK(std::abs(ops[3](0, 1) - Complex(0, -std::sqrt(0.5))) < 1e-15);
  CHECK(std::abs(ops[3](1, 0) - std::sqrt(0.3)) < 1e-15);
  CHECK(max_abs_diff(ops[2], m2(std::sqrt(0.7), 0, 0, std::sqrt(0.5))) < 1e-15);
}

TEST_CASE("sgad_rates") {
  SUBCASE("t = 0 is exactly zero") {
    for (double r : {0.0, 0.3, 1.0}) {
      const auto s = sgad_rates({1.0, 0.0, r, 0.0, 1.0, 0.5});
      CHECK(s.lambda == 0.0);
      CHECK(s.mu == 0.0);
      CHECK(s.nu == 0.0);
    }
  }
  SUBCASE("r = 0 forces mu = 0") {
    for (double gt : grid(21)) {
      const double n = thermal_occupation(2.0);
      const auto s = sgad_rates({1.0, 3.0 * gt, 0.0, 0.0, 2.0, (n + 1) / (2 * n + 1)});
      CHECK(s.mu == 0.0);
    }
  }
  SUBCASE("unsqueezed rates approach their thermal limits") {
    const double x = 1.0;
    const double n = thermal_occupation(x);
    const double p = (n + 1) / (2 * n + 1);
    const auto s = sgad_rates({1.0, 40.0, 0.0, 0.0, x, p});
    CHECK(s.lambda == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.nu == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("rates outside [0,1] raise with the offending values") {
    try {
      sgad_rates({1.0, 0.01, 1.0, 0.0, 1.0, 0.5});
      FAIL("expected RateOutOfRange");
    } catch (const RateOutOfRange& e) {
      CHECK(e.rates().lambda < 0.0);
    }
  }
  SUBCASE("invalid physical inputs") {
    CHECK_THROWS_AS(sgad_rates({0.0, 1.0, 0.0, 0.0, 1.0, 0.5}), ParameterError);
    CHECK_THROWS_AS(sgad_rates({1.0, -1.0, 0.0, 0.0, 1.0, 0.5}), ParameterError);
    CHECK_THROWS_AS(sgad_rates({1.0, 1.0, 0.0, 0.0, 0.0, 0.5}), ParameterError);
    CHECK_THROWS_AS(sgad_rates({1.0, 1.0, 0.0, 0.0, 1.0, 1.0}), ParameterError);
  }
}

TEST_CASE("occupation numbers") {
  CHECK(thermal_occupation(std::log(2.0)) == doctest::Approx(1.0));
  CHECK(squeezed_occupation(1.0, 0.0) == doctest::Approx(thermal_occupation(1.0)));
  CHECK(squeezing_coupling(1.0, 0.0) == 0.0);
  // N = Nth cosh 2r + sinh^2 r.
  const double nth = thermal_occupation(0.7);
  CHECK(squeezed_occupation(0.7, 0.4) ==
        doctest::Approx(nth * std::cosh(0.8) + std::sinh(0.4) * std::sinh(0.4)));
}

TEST_CASE("collective unitaries") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double a = angle(rng);
    CHECK(is_unitary(make_cr(a)));
    CHECK(is_unitary(make_cd(a)));
  }
  CHECK(max_abs_diff(make_cr(std::numbers::pi / 2), m2(0, -1, 1, 0)) < 1e-15);
  CHECK(max_abs_diff(make_cd(std::numbers::pi), gates::z()) < 1e-15);
}
