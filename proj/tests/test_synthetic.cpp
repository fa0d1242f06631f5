#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "accelflow/metrics.hpp"
#include "accelflow/stencils.hpp"
#include "accelflow/synthetic.hpp"

using namespace accelflow;

TEST_CASE("square pair: geometry, trivial shift, exact ground truth") {
  GridSpec g(50, 50);
  SquarePair p = gen_square_pair(g, 20, 10, 0);
  double sum0 = 0.0, sum1 = 0.0;
  for (int i = 0; i < p.i0.size(); ++i) {
    sum0 += p.i0[i];
    sum1 += p.i1[i];
  }
  CHECK(sum0 == 400.0);
  CHECK(sum1 == 400.0);

  // the ground-truth flow warps I1 back onto I0 exactly (integer shift)
  ScalarField w = warp(p.i1, p.gt_flow);
  for (int i = 0; i < w.size(); ++i) CHECK(w[i] == p.i0[i]);

  SquarePair z = gen_square_pair(g, 16, 0, 0);
  for (int i = 0; i < z.i0.size(); ++i) CHECK(z.i0[i] == z.i1[i]);
  CHECK(z.gt_flow.ux(0) == 0.0);

  CHECK_THROWS_AS(gen_square_pair(g, 20, 40, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_square_pair(g, 60, 0, 0), std::invalid_argument);
}

TEST_CASE("rect pair geometry") {
  GridSpec g(50, 50);
  RectPair p = gen_rect_pair(g, 17, 20, 14, 8);
  double sum0 = 0.0, sum1 = 0.0;
  for (int i = 0; i < p.i0.size(); ++i) {
    sum0 += p.i0[i];
    sum1 += p.i1[i];
  }
  CHECK(sum0 == 17.0 * 17.0);
  CHECK(sum1 == 20.0 * 14.0);

  RectPair same = gen_rect_pair(g, 15, 15, 15, 0);
  for (int i = 0; i < same.i0.size(); ++i) CHECK(same.i0[i] == same.i1[i]);
}

TEST_CASE("salt and pepper noise: edge levels, corruption count, determinism") {
  GridSpec g(50, 50);
  SquarePair p = gen_square_pair(g, 20, 10, 0);

  ScalarField untouched = add_salt_pepper(p.i0, 0.0, 7);
  for (int i = 0; i < untouched.size(); ++i) CHECK(untouched[i] == p.i0[i]);

  ScalarField all = add_salt_pepper(p.i0, 1.0, 7);
  for (int i = 0; i < all.size(); ++i) CHECK((all[i] == 0.0 || all[i] == 1.0));

  ScalarField gray(g);
  std::fill(gray.data().begin(), gray.data().end(), 0.5);
  ScalarField noisy = add_salt_pepper(gray, 0.2, 7);
  int corrupted = 0;
  for (int i = 0; i < noisy.size(); ++i)
    if (noisy[i] != 0.5) ++corrupted;
  // binomial(2500, 0.2): mean 500, sigma 20; +-3 sigma
  CHECK(corrupted >= 440);
  CHECK(corrupted <= 560);

  ScalarField again = add_salt_pepper(gray, 0.2, 7);
  for (int i = 0; i < noisy.size(); ++i) CHECK(again[i] == noisy[i]);
  ScalarField other = add_salt_pepper(gray, 0.2, 8);
  int diff = 0;
  for (int i = 0; i < noisy.size(); ++i)
    if (other[i] != noisy[i]) ++diff;
  CHECK(diff > 0);

  CHECK_THROWS_AS(add_salt_pepper(gray, 1.5, 7), std::invalid_argument);
}

TEST_CASE("endpoint error: exact match, constant offset, mask handling") {
  GridSpec g(20, 20);
  MapField gt = MapField::translation(g, 4, 0);
  CHECK(endpoint_error(gt, gt) == 0.0);

  MapField off = MapField::translation(g, 5, 0);
  CHECK(endpoint_error(off, gt) == doctest::Approx(1.0).epsilon(1e-14));

  std::vector<std::uint8_t> mask(g.size(), 0);
  CHECK_THROWS_AS(endpoint_error(off, gt, mask), std::invalid_argument);
  mask[5] = 1;
  CHECK(endpoint_error(off, gt, mask) == doctest::Approx(1.0));
}

TEST_CASE("reconstruction error reports data term and L2 norm") {
  GridSpec g(50, 50);
  ScalarField img = random_smooth_image(g, 3, 3);
  ReconError zero = recon_error(img, img, MapField::identity(g));
  CHECK(zero.data_term == 0.0);
  CHECK(zero.l2_norm == 0.0);

  ScalarField zeros(g), ones(g);
  std::fill(ones.data().begin(), ones.data().end(), 1.0);
  ReconError full = recon_error(zeros, ones, MapField::identity(g));
  CHECK(full.data_term == doctest::Approx(1250.0));
  CHECK(full.l2_norm == doctest::Approx(std::sqrt(2500.0)));
}

TEST_CASE("band-limited fields are deterministic per seed and amplitude-scaled") {
  GridSpec g(24, 24);
  ScalarField a = random_smooth_field(g, 3, 2.0, 99);
  ScalarField b = random_smooth_field(g, 3, 2.0, 99);
  for (int i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  double peak = 0.0;
  for (int i = 0; i < a.size(); ++i) peak = std::max(peak, std::fabs(a[i]));
  CHECK(peak == doctest::Approx(2.0).epsilon(1e-12));

  MapField m = random_integer_map(g, 3, 3.0, 4);
  for (int i = 0; i < m.size(); ++i) {
    CHECK(m.ux(i) == std::round(m.ux(i)));
    CHECK(std::fabs(m.ux(i)) <= 3.0);
  }
}
