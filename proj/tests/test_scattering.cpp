#include "necklace/scattering.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace necklace;
using C = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

template <typename F> void for_random_points(int count, std::uint64_t seed, F &&f) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    const double e = 200.0 * (1.0 - unit(rng));
    const double w = 6.0 * (1.0 - unit(rng));
    f(e, w);
  }
}

} // namespace

TEST_CASE("amplitudes are unitary and the transfer matrix has unit determinant") {
  double unit_err = 0.0, det_err = 0.0, im_trace = 0.0, hill_err = 0.0, sym_err = 0.0;
  for_random_points(10000, 1, [&](double e, double w) {
    const auto s = loop_amplitudes(e, w);
    unit_err = std::max(unit_err, std::abs(std::norm(s.T) + std::norm(s.R) - 1.0));
    unit_err = std::max(unit_err, std::abs(std::norm(s.T) + std::norm(s.L) - 1.0));
    const auto m = transfer_matrix(s, e).entries;
    det_err = std::max(det_err, std::abs(m.determinant() - 1.0));
    im_trace = std::max(im_trace, std::abs(m.trace().imag()));
    hill_err = std::max(hill_err, std::abs(m.trace().real() - hill_discriminant(e, w)));
    sym_err = std::max({sym_err, std::abs(std::abs(m(0, 0)) - std::abs(m(1, 1))),
                        std::abs(std::abs(m(0, 1)) - std::abs(m(1, 0)))});
  });
  CHECK(unit_err < 1e-12);
  CHECK(det_err < 1e-12);
  CHECK(im_trace < 1e-12);
  CHECK(hill_err < 1e-10);
  CHECK(sym_err < 1e-12);
}

TEST_CASE("denominator identity |z - 9|^2 = 64 + 9 |z - 1|^2 on the unit circle") {
  for (int i = 0; i <= 100; ++i) {
    const C z = std::polar(1.0, 2 * pi * i / 100.0);
    CHECK(std::norm(z - 9.0) == doctest::Approx(64.0 + 9.0 * std::norm(z - 1.0)).epsilon(1e-14));
  }
  const auto s = loop_amplitudes(std::pow(pi / 3, 2), 1.0);
  CHECK(std::abs(std::norm(s.T) + std::norm(s.R) - 1.0) < 1e-12);
}

TEST_CASE("loop resonance: reflection vanishes and |T| = 1") {
  for (int n = 1; n <= 5; ++n)
    for (double w : {0.7, 1.0, 2.0, 6.0}) {
      const double e = std::pow(pi * n / w, 2);
      const auto s = loop_amplitudes(e, w);
      CHECK(std::abs(s.R) < 1e-14);
      CHECK(std::abs(s.L) < 1e-14);
      CHECK(std::abs(std::abs(s.T) - 1.0) < 1e-14);
      // R = 0, |T| = 1 turns the transfer matrix into +-diag(e^{-ik}, e^{ik})
      const auto m = transfer_matrix(s, e).entries;
      const C d = m(0, 0) * std::polar(1.0, std::sqrt(e));
      CHECK(std::abs(std::abs(d.real()) - 1.0) < 1e-12);
      CHECK(std::abs(d.imag()) < 1e-12);
      CHECK(std::abs(m(0, 1)) < 1e-14);
    }
}

TEST_CASE("low-energy limit: T -> 1, R -> 0, transfer matrix -> identity") {
  const auto s = loop_amplitudes(1e-16, 1.3);
  CHECK(std::abs(s.T - 1.0) < 1e-7);
  CHECK(std::abs(s.R) < 1e-7);
  const auto m = transfer_matrix(s, 1e-16).entries;
  CHECK((m - Matrix2c<double>::Identity()).norm() < 1e-7);
}

TEST_CASE("inverse-transmission phase is the continuous Arctan branch") {
  // 1/T = (8 cos t - 10 i sin t) / 8, so arg(1/T) = -Arctan((5/4) tan t)
  for (int i = 0; i <= 20000; ++i) {
    const double theta = 1e-3 + 60.0 * i / 20000.0;
    const auto s = loop_amplitudes_at_wavenumber(theta, 1.0);
    CHECK(s.inverse_transmission_phase == doctest::Approx(-continuous_arctan(theta)).epsilon(1e-12));
    CHECK(std::abs(std::arg(1.0 / s.T) - std::remainder(s.inverse_transmission_phase, 2 * pi)) < 1e-12);
  }
}

TEST_CASE("continuous Arctan is continuous and hits k pi and (k + 1/2) pi") {
  double prev = continuous_arctan(0.0);
  CHECK(prev == 0.0);
  for (int i = 1; i <= 100000; ++i) {
    const double theta = 50.0 * i / 100000.0;
    const double v = continuous_arctan(theta);
    CHECK(std::abs(v - prev) < 1e-2);
    prev = v;
  }
  for (int k = 0; k < 10; ++k) {
    CHECK(continuous_arctan(pi * k) == doctest::Approx(pi * k));
    CHECK(continuous_arctan(pi * (k + 0.5)) == doctest::Approx(pi * (k + 0.5)));
  }
}

TEST_CASE("spectral shift examples") {
  for (int k = 1; k <= 6; ++k)
    CHECK(spectral_shift(std::pow(pi * k / 1.5, 2), 1.5) == doctest::Approx(-(2.0 * k - 1)));
  CHECK(spectral_shift(std::pow(pi / 2, 2), 1.0) == doctest::Approx(-0.5));
  CHECK(std::abs(spectral_shift(1e-14, 1.0)) < 1e-6);
}

TEST_CASE("relative amplitudes") {
  const auto same = relative_amplitudes(3.3, 1.7, 1.7);
  CHECK(std::abs(same.T - 1.0) < 1e-13);
  CHECK(std::abs(same.R) < 1e-13);
  CHECK(std::abs(same.L) < 1e-13);

  const auto s = relative_amplitudes(std::pow(pi / 4, 2), 6.0, 2.0);
  CHECK(std::abs(s.R) < 1e-12);
  CHECK(std::abs(std::abs(s.T) - 1.0) < 1e-12);

  for (int n = 1; n <= 4; ++n) {
    const double e = std::pow(pi * n / 1.3, 2); // sqrt(E) (s1 - s0) / pi = n
    CHECK(std::abs(relative_amplitudes(e, 2.5, 1.2).R) < 1e-11);
  }

  double worst = 0.0;
  for_random_points(1000, 5, [&](double e, double s1) {
    const double s0 = 0.5 + std::fmod(7.3 * s1, 5.0);
    const C z1 = std::polar(1.0, 2 * s1 * std::sqrt(e));
    const C z0 = std::polar(1.0, 2 * s0 * std::sqrt(e));
    const C closed = -3.0 * (z1 - z0) / (z1 - 9.0 * z0);
    const auto r = relative_amplitudes(e, s1, s0);
    worst = std::max({worst, std::abs(r.R - closed), std::abs(r.L - closed)});
  });
  CHECK(worst < 1e-10);
}

TEST_CASE("Hill discriminant examples") {
  CHECK(hill_discriminant(1e-20, 1.7) == doctest::Approx(2.0));
  CHECK(hill_discriminant(std::pow(pi / 2, 2), 1.0) == doctest::Approx(-2.5));
  for (int k = 1; k <= 50; ++k)
    CHECK(std::abs(hill_discriminant(std::pow(pi * k, 2), 1.0)) <= 2.0 + 1e-12);
}

TEST_CASE("extended precision agrees with double") {
  for_random_points(200, 9, [](double e, double w) {
    const auto d = loop_amplitudes(e, w);
    const auto l = loop_amplitudes<long double>(e, w);
    CHECK(std::abs(C(l.T) - d.T) < 1e-13);
    CHECK(std::abs(C(l.R) - d.R) < 1e-13);
  });
}

TEST_CASE("opaque loops are rejected") {
  const ScatteringTriple<double> opaque{C(1e-15, 0.0), C(-1.0, 0.0), C(-1.0, 0.0), 0.0};
  CHECK_THROWS_AS(transfer_matrix(opaque, 2.0), OpaqueLoop);
  CHECK_THROWS_AS(bare_transfer_matrix(opaque), OpaqueLoop);
}
