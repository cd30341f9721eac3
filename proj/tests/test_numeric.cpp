#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "riclink/numeric.hpp"

using namespace riclink;

TEST_CASE("normal quantile matches tabulated values") {
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-10));
  CHECK(normal_quantile(0.84134474606854293) == doctest::Approx(1.0).epsilon(1e-10));
  // Q(1) = 0.158655..., so the quantile of that mass is -1.
  CHECK(normal_quantile(0.158655253931457) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("normal quantile is antisymmetric about 1/2") {
  for (double p : {0.01, 0.2, 0.37, 0.45}) {
    CHECK(normal_quantile(p) ==
          doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-11));
  }
}

TEST_CASE("normal quantile rejects the boundary") {
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(-0.1), std::domain_error);
}

TEST_CASE("gauss-legendre nodes are symmetric and weights sum to 2") {
  for (int order : {2, 8, 33, 256}) {
    const GaussLegendre& gl = gauss_legendre(order);
    REQUIRE(gl.nodes.size() == order);
    CHECK(gl.weights.sum() == doctest::Approx(2.0).epsilon(1e-13));
    for (int i = 0; i < order / 2; ++i) {
      CHECK(gl.nodes[i] == doctest::Approx(-gl.nodes[order - 1 - i]).epsilon(1e-13));
      CHECK(gl.weights[i] == doctest::Approx(gl.weights[order - 1 - i]).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(1), std::invalid_argument);
}

TEST_CASE("quadrature integrates polynomials exactly") {
  // order-n rule is exact through degree 2n-1
  const double third = integrate_gl([](double x) { return x * x; }, 0.0, 1.0, 2);
  CHECK(third == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const double q = integrate_gl([](double x) { return x * x * x * x * x; }, -1.0,
                                2.0, 3);
  CHECK(q == doctest::Approx((64.0 - 1.0) / 6.0).epsilon(1e-13));
}

TEST_CASE("quadrature converges on smooth integrands") {
  const auto f = [](double x) { return std::exp(x); };
  CHECK(integrate_gl(f, 0.0, 1.0, 16) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  const auto g = [](double x) { return std::sin(x); };
  const double v32 = integrate_gl(g, 0.0, 3.141592653589793, 32);
  const double v64 = integrate_gl(g, 0.0, 3.141592653589793, 64);
  CHECK(std::abs(v64 - v32) < 1e-12);
  CHECK(v64 == doctest::Approx(2.0).epsilon(1e-12));
}
