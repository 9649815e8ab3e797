#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dwsim/walker.hpp"

using namespace dwsim;

namespace {

MaterialParams co_wire(double alpha) {
  return MaterialParams::from_si("Co", 14.46e5, 0.35, 500.0, 2.0e-11, alpha);
}

double deg(double rad) { return rad * 180.0 / dwsim::kPi; }

}  // namespace

TEST_CASE("inverse width follows the tilt constraint") {
  MaterialParams m = co_wire(0.02);
  // c(0) = 1/W0; frozen reference 425147.03 1/cm
  CHECK(wall_c_of_phi(m, 0.0) == doctest::Approx(425147.03).epsilon(1e-6));
  // c(phi)^2 = (Ms/2A)(H_K + 4 pi Ms sin^2 phi), checked at a few tilts
  for (double phi : {0.1, 0.45, 1.1, kPi / 2}) {
    double s = std::sin(phi);
    double expect = std::sqrt(m.Ms / (2.0 * m.A_ex) *
                              (m.H_K + 4.0 * kPi * m.Ms * s * s));
    CHECK(wall_c_of_phi(m, phi) == doctest::Approx(expect).epsilon(1e-12));
    // even in phi
    CHECK(wall_c_of_phi(m, -phi) ==
          doctest::Approx(wall_c_of_phi(m, phi)).epsilon(1e-14));
  }
}

TEST_CASE("rate pair obeys alpha c v + dphi/dt = gamma H") {
  MaterialParams m = co_wire(0.008);
  for (double phi : {-1.2, -0.3, -0.05, 0.0, 0.04, 0.33, 1.4}) {
    for (double b_cgs : {-9.0e4, 0.0, 3.0e4}) {
      for (double H : {-20.0, 0.0, 7.5}) {
        double c = wall_c_of_phi(m, phi);
        double v = walker_velocity_cgs(m, phi, b_cgs, H);
        double pr = walker_phi_rate(m, phi, b_cgs, H);
        double lhs = m.alpha * c * v + pr;
        double rhs = m.gamma * H;
        double scale = std::max({std::abs(m.alpha * c * v), std::abs(pr), 1.0});
        CHECK(lhs - rhs == doctest::Approx(0.0).scale(scale).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("launch velocity from rest is -b/(1+alpha^2)") {
  for (double alpha : {0.008, 0.02}) {
    MaterialParams m = co_wire(alpha);
    for (double b_cgs : {-7.5e4, -3.0e4, 2.0e4}) {
      double expect = -b_cgs / (1.0 + alpha * alpha);
      CHECK(walker_velocity_cgs(m, 0.0, b_cgs, 0.0) ==
            doctest::Approx(expect).epsilon(1e-13));
    }
  }
}

TEST_CASE("zero-field fixed point at b = -750 m/s") {
  MaterialParams m = co_wire(0.008);
  WalkerFixedPoint fp = walker_fixed_point(m, -750.0, 0.0);
  REQUIRE(fp.exists);
  CHECK(fp.phi_rad == doctest::Approx(-0.11244892).epsilon(1e-6));
  CHECK(fp.c_per_m == doctest::Approx(5.13285e7).epsilon(1e-5));
  CHECK(fp.width_ratio == doctest::Approx(0.828287).epsilon(1e-5));
  // no field: the settled wall is at rest
  CHECK(std::abs(fp.v_m_per_s) < 1e-6);
  // the rate really vanishes there
  CHECK(std::abs(walker_phi_rate(m, fp.phi_rad, -750.0e2, 0.0)) < 1e-2);

  // mirrored drive gives the mirrored tilt
  WalkerFixedPoint fm = walker_fixed_point(m, 750.0, 0.0);
  REQUIRE(fm.exists);
  CHECK(fm.phi_rad == doctest::Approx(0.11244892).epsilon(1e-6));
}

TEST_CASE("fixed point is independent of damping when H = 0") {
  WalkerFixedPoint a = walker_fixed_point(co_wire(0.008), -750.0, 0.0);
  WalkerFixedPoint b = walker_fixed_point(co_wire(0.02), -750.0, 0.0);
  REQUIRE(a.exists);
  REQUIRE(b.exists);
  CHECK(a.phi_rad == doctest::Approx(b.phi_rad).epsilon(1e-10));
}

TEST_CASE("steady velocity under field locks to gamma H/(alpha c)") {
  MaterialParams m = co_wire(0.02);
  struct Case {
    double b, v, phi_deg;
  };
  // frozen references for H = 10 Oe
  const Case cases[] = {
      {-800.0, 199.88, -4.7553}, {0.0, 220.44, 1.5774}, {300.0, 206.95, 3.8739}};
  for (const Case& c : cases) {
    WalkerFixedPoint fp = walker_fixed_point(m, c.b, 10.0);
    REQUIRE(fp.exists);
    CHECK(deg(fp.phi_rad) == doctest::Approx(c.phi_deg).epsilon(1e-4));
    CHECK(fp.v_m_per_s == doctest::Approx(c.v).epsilon(1e-4));
    // the settled velocity is exactly gamma H / (alpha c)
    double v_lock = m.gamma * 10.0 / (m.alpha * fp.c_per_m * 1e-2) * 1e-2;
    CHECK(fp.v_m_per_s == doctest::Approx(v_lock).epsilon(1e-9));
  }
}

TEST_CASE("fixed point survives past the rigid-wall estimate, then is lost") {
  MaterialParams m = co_wire(0.008);
  // The rigid-wall critical estimate is 927 m/s, but the width reacts to the
  // tilt, so a stationary (strongly narrowed) solution persists up to about
  // 1140 m/s before the restoring torque truly saturates.
  CHECK(walker_fixed_point(m, -1100.0, 0.0).exists);
  WalkerFixedPoint fp1100 = walker_fixed_point(m, -1100.0, 0.0);
  CHECK(std::abs(fp1100.phi_rad) > 0.165);  // beyond the rigid-wall angle
  CHECK_FALSE(walker_fixed_point(m, -1200.0, 0.0).exists);
}

TEST_CASE("stopping distance quadrature at b = -750 m/s") {
  MaterialParams m = co_wire(0.008);
  CHECK(walker_x_max_m(m, -750.0) ==
        doctest::Approx(309.4782e-9).epsilon(1e-6));
  // drive toward -x gives the mirrored stop
  CHECK(walker_x_max_m(m, 750.0) ==
        doctest::Approx(-309.4782e-9).epsilon(1e-6));
  // stronger damping stops the wall sooner: x_max roughly ~ 1/alpha
  CHECK(walker_x_max_m(co_wire(0.02), -750.0) ==
        doctest::Approx(309.4782e-9 * 0.008 / 0.02).epsilon(0.02));
  // beyond the last stationary tilt there is no stopping point
  CHECK_THROWS_AS(walker_x_max_m(m, -1300.0), std::domain_error);
}

TEST_CASE("small-torque closed forms at b = -750 m/s") {
  MaterialParams m = co_wire(0.008);
  CHECK(small_torque_phi_rad(m, -750.0) ==
        doctest::Approx(-0.0923568).epsilon(1e-5));
  CHECK(small_torque_x_max_m(m, -750.0) ==
        doctest::Approx(271.5436e-9).epsilon(1e-5));
  CHECK(small_torque_width_ratio(m, -750.0) ==
        doctest::Approx(0.8450058).epsilon(1e-5));
  // the leading-order tilt approaches the exact one as b shrinks
  WalkerFixedPoint fp = walker_fixed_point(m, -100.0, 0.0);
  CHECK(small_torque_phi_rad(m, -100.0) ==
        doctest::Approx(fp.phi_rad).epsilon(5e-3));
}

TEST_CASE("stored wall energy, exact and quadratic forms") {
  MaterialParams m = co_wire(0.008);
  CHECK(wall_energy_delta_J_per_m2(m, -750.0) ==
        doctest::Approx(0.705104e-3).epsilon(1e-5));
  CHECK(wall_energy_delta_quadratic_J_per_m2(m, -750.0) ==
        doctest::Approx(0.527163e-3).epsilon(1e-6));
  // both are even in b
  CHECK(wall_energy_delta_J_per_m2(m, 750.0) ==
        doctest::Approx(wall_energy_delta_J_per_m2(m, -750.0)).epsilon(1e-12));
  // the quadratic form underestimates well below critical but converges
  double e1 = wall_energy_delta_J_per_m2(m, -60.0);
  double e2 = wall_energy_delta_quadratic_J_per_m2(m, -60.0);
  CHECK(e1 == doctest::Approx(e2).epsilon(5e-3));
}

TEST_CASE("asymptotics at 10/11 of the critical torque") {
  MaterialParams m = co_wire(0.008);
  DerivedScales d = derived_scales(m);
  double b = -(2.0 / 2.2) * d.b_c_m_per_s;  // 843.04 m/s
  WalkerFixedPoint fp = walker_fixed_point(m, b, 0.0);
  REQUIRE(fp.exists);
  CHECK(deg(std::abs(fp.phi_rad)) == doctest::Approx(7.7671).epsilon(1e-4));
  CHECK((1.0 - fp.width_ratio) * 100.0 ==
        doctest::Approx(22.4729).epsilon(1e-4));
}

TEST_CASE("integration settles onto the fixed point and stops") {
  MaterialParams m = co_wire(0.008);
  DriveProgram drive = DriveProgram::constant(-750.0, 0.0);
  WalkerOptions opt;
  opt.t_end_s = 5e-9;
  WalkerResult r = integrate_walker(m, drive, opt);

  REQUIRE(!r.series.t_s.empty());
  // the launch velocity recorded at t = 0 is -b/(1+alpha^2)
  CHECK(r.series.v_m_per_s.front() ==
        doctest::Approx(750.0 / (1.0 + m.alpha * m.alpha)).epsilon(1e-10));
  CHECK(r.reached_steady);
  CHECK(r.t_steady_s > 0.0);
  CHECK(r.t_steady_s < 5e-9);
  CHECK(r.phi_final_rad == doctest::Approx(-0.11244892).epsilon(1e-4));
  // the restoring slope softens near the fixed point at this drive (local
  // relaxation time ~0.54 ns), so 5 ns leaves a ~0.05 m/s residual
  CHECK(std::abs(r.v_final_m_per_s) < 0.2);
  // total advance matches the quadrature
  CHECK(r.x_final_m == doctest::Approx(309.4782e-9).epsilon(1e-3));
  // wall width in the series ends at the narrowed value
  CHECK(r.series.W_m.back() ==
        doctest::Approx(0.828287 * 23.52127e-9).epsilon(1e-3));
}

TEST_CASE("integration from a tilted start recoils by the stop distance") {
  MaterialParams m = co_wire(0.008);
  WalkerFixedPoint fp = walker_fixed_point(m, -750.0, 0.0);
  WalkerOptions opt;
  opt.t_end_s = 5e-9;
  opt.phi0_rad = fp.phi_rad;
  WalkerResult r = integrate_walker(m, DriveProgram(), opt);
  CHECK(r.phi_final_rad == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  CHECK(r.x_final_m == doctest::Approx(-309.4782e-9).epsilon(1e-3));
  // drive-off velocity off the tilted state is b/(1+alpha^2)
  CHECK(walker_velocity_cgs(m, fp.phi_rad, 0.0, 0.0) ==
        doctest::Approx(-750.0e2 / (1.0 + m.alpha * m.alpha)).epsilon(1e-6));
}

TEST_CASE("torque pulse gives zero net displacement") {
  MaterialParams m = co_wire(0.008);
  DriveProgram d = DriveProgram::constant(-750.0, 0.0);
  d.add_segment(2.5e-9, 0.0, 0.0);
  WalkerOptions opt;
  opt.t_end_s = 6e-9;
  WalkerResult r = integrate_walker(m, d, opt);
  CHECK(std::abs(r.x_final_m) < 0.5e-9);
  CHECK(std::abs(r.phi_final_rad) < 1e-5);
  // right after switch-off the wall runs backward
  size_t i_off = 0;
  for (size_t i = 0; i < r.series.t_s.size(); ++i)
    if (r.series.t_s[i] <= 2.5e-9 + 1e-15) i_off = i;
  REQUIRE(i_off + 1 < r.series.t_s.size());
  CHECK(r.series.v_m_per_s[i_off + 1] < -500.0);
}

TEST_CASE("integrator converges at fourth order") {
  MaterialParams m = co_wire(0.008);
  DriveProgram drive = DriveProgram::constant(-750.0, 0.0);
  auto phi_at = [&](double dt) {
    WalkerOptions opt;
    opt.t_end_s = 0.2048e-9;
    opt.dt_s = dt;
    return integrate_walker(m, drive, opt).phi_final_rad;
  };
  double p1 = phi_at(1.28e-11);
  double p2 = phi_at(6.4e-12);
  double p3 = phi_at(3.2e-12);
  double ratio = (p1 - p2) / (p2 - p3);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("sampling stride thins the series but keeps the endpoint") {
  MaterialParams m = co_wire(0.02);
  DriveProgram drive = DriveProgram::constant(-300.0, 0.0);
  WalkerOptions a;
  a.t_end_s = 0.5e-9;
  a.dt_s = 0.5e-12;
  WalkerOptions b = a;
  b.sample_stride = 8;
  WalkerResult ra = integrate_walker(m, drive, a);
  WalkerResult rb = integrate_walker(m, drive, b);
  CHECK(rb.series.t_s.size() < ra.series.t_s.size());
  CHECK(rb.series.t_s.back() == doctest::Approx(0.5e-9).epsilon(1e-12));
  CHECK(rb.x_final_m == doctest::Approx(ra.x_final_m).epsilon(1e-12));
}
