#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "corecert/certificates.hpp"
#include "corecert/errors.hpp"
#include "corecert/rng.hpp"

using namespace corecert;

namespace {

long double ln_binomial_ld(int n, int k) {
  return lgammal(static_cast<long double>(n) + 1.0L) - lgammal(static_cast<long double>(k) + 1.0L) -
         lgammal(static_cast<long double>(n - k) + 1.0L);
}

// Independent long-double evaluation of the normalized risk polynomial:
// lower + upper coefficient groups against the leading term.
long double risk_poly_ld(int K, int s, double beta, double t) {
  const long double ln_t = logl(static_cast<long double>(t));
  const long double ln_norm = ln_binomial_ld(K, s);
  long double total = 0.0L;
  if (s < K) {
    const long double pref = logl(static_cast<long double>(beta)) - logl(2.0L * K);
    for (int i = s; i < K; ++i) {
      total += expl(pref + ln_binomial_ld(i, s) - ln_norm + (i - K) * ln_t);
    }
  }
  const long double pref = logl(static_cast<long double>(beta)) - logl(6.0L * K);
  for (int i = K + 1; i <= 4 * K; ++i) {
    total += expl(pref + ln_binomial_ld(i, s) - ln_norm + (i - K) * ln_t);
  }
  return total;
}

}  // namespace

TEST_CASE("eps_posteriori: boundary and frozen reference values") {
  CHECK(eps_posteriori(400, 1e-4, 400) == 1.0);
  CHECK(eps_posteriori(1, 0.5, 1) == 1.0);

  // Reference points for K = 400, beta = 1e-4, cross-checked against a
  // long-double evaluation of the defining expression.
  const double e0 = eps_posteriori(400, 1e-4, 0);
  const double e4 = eps_posteriori(400, 1e-4, 4);
  CHECK(e0 == doctest::Approx(0.0373).epsilon(2e-3));
  CHECK(e4 == doctest::Approx(0.0868).epsilon(2e-3));
  const long double e0_ld = -expm1l((logl(1e-4L) - logl(400.0L) - ln_binomial_ld(400, 0)) / 400.0L);
  const long double e4_ld = -expm1l((logl(1e-4L) - logl(400.0L) - ln_binomial_ld(400, 4)) / 396.0L);
  CHECK(std::abs(e0 - static_cast<double>(e0_ld)) <= 1e-12);
  CHECK(std::abs(e4 - static_cast<double>(e4_ld)) <= 1e-12);
}

TEST_CASE("eps_posteriori: every level satisfies its defining term equation") {
  for (int K : {10, 200}) {
    for (int s = 0; s < K; ++s) {
      const double comp = eps_posteriori_complement(K, 1e-4, s);
      const long double lhs = ln_binomial_ld(K, s) + (K - s) * logl(static_cast<long double>(comp));
      const long double rhs = logl(1e-4L) - logl(static_cast<long double>(K));
      CHECK(std::abs(static_cast<double>(lhs - rhs)) <= 1e-9);
    }
  }
}

TEST_CASE("eps_posteriori: confidence splits sum back to beta") {
  for (int K : {10, 200, 2000}) {
    const double beta = 1e-4;
    long double sum = 0.0L;
    for (int s = 0; s < K; ++s) {
      const double comp = eps_posteriori_complement(K, beta, s);
      sum += expl(ln_binomial_ld(K, s) + (K - s) * logl(static_cast<long double>(comp)));
    }
    CHECK(std::abs(static_cast<double>(sum) - beta) <= 1e-9 * beta);
  }
}

TEST_CASE("eps_posteriori and its complement agree where both are representable") {
  for (int s : {0, 1, 5, 50, 200}) {
    const double eps = eps_posteriori(400, 1e-4, s);
    const double comp = eps_posteriori_complement(400, 1e-4, s);
    CHECK(std::abs((1.0 - eps) - comp) <= 4e-16);
  }
}

TEST_CASE("eps_posteriori: strictly increasing in the compression cardinality") {
  const int K = 200;
  double prev = -1.0;
  for (int s = 0; s <= K; ++s) {
    const double eps = eps_posteriori(K, 1e-4, s);
    CHECK(eps > prev);
    CHECK(eps >= 0.0);
    CHECK(eps <= 1.0);
    prev = eps;
  }
}

TEST_CASE("eps_posteriori: argument validation") {
  CHECK_THROWS_AS(eps_posteriori(10, 1e-4, -1), std::invalid_argument);
  CHECK_THROWS_AS(eps_posteriori(10, 1e-4, 11), std::invalid_argument);
  CHECK_THROWS_AS(eps_posteriori(10, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(eps_posteriori(10, 1.0, 1), std::invalid_argument);
}

TEST_CASE("eps_apriori: closed form at d = 0 and the frozen d = 14 reference") {
  const int K = 100;
  CHECK(eps_apriori(K, 0, 1e-4) == doctest::Approx(1.0 - std::pow(1e-4, 1.0 / K)).epsilon(1e-12));

  const double e = eps_apriori(100, 14, 1e-4);
  CHECK(e == doctest::Approx(0.425).epsilon(2e-3));
  const long double e_ld = -expm1l((logl(1e-4L) - ln_binomial_ld(100, 14)) / 86.0L);
  CHECK(std::abs(e - static_cast<double>(e_ld)) <= 1e-12);

  // Defining equation: C(K,d) (1-eps)^(K-d) = beta.
  const long double lhs = ln_binomial_ld(100, 14) + 86.0L * log1pl(-static_cast<long double>(e));
  CHECK(std::abs(static_cast<double>(lhs) - std::log(1e-4)) <= 1e-9);
}

TEST_CASE("eps_apriori: vanishing at beta near one for d = 0, errors otherwise") {
  CHECK(eps_apriori(50, 0, 1.0 - 1e-9) <= 1e-9);
  CHECK_THROWS_AS(eps_apriori(14, 14, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(eps_apriori(10, 14, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(eps_apriori(10, -1, 1e-4), std::invalid_argument);
}

TEST_CASE("risk_interval: full-complexity case pins the upper end at one") {
  const RiskInterval ri = risk_interval(40, 40, 1e-3);
  CHECK(ri.hi == 1.0);
  CHECK(ri.lo >= 0.0);
  CHECK(ri.lo <= ri.hi);
  // The single positive root still satisfies its equation.
  const auto roots = risk_interval_roots(40, 40, 1e-3);
  CHECK(roots.t_lo == 0.0);
  const long double residual = risk_poly_ld(40, 40, 1e-3, roots.t_hi) - 1.0L;
  CHECK(std::abs(static_cast<double>(residual)) <= 1e-8);
}

TEST_CASE("risk_interval: roots satisfy the polynomial with small residuals") {
  for (const auto& [K, s, beta] : std::vector<std::tuple<int, int, double>>{
           {10, 0, 1e-3}, {10, 3, 1e-3}, {50, 5, 1e-4}, {200, 20, 1e-4}, {1000, 100, 1e-5}, {500, 499, 1e-4}}) {
    const auto roots = risk_interval_roots(K, s, beta);
    CHECK(roots.t_lo <= roots.t_hi);
    for (double t : {roots.t_lo, roots.t_hi}) {
      const long double q = risk_poly_ld(K, s, beta, t);
      CHECK(std::abs(static_cast<double>(q - 1.0L)) <= 1e-8 * std::max(1.0, static_cast<double>(q)));
    }
  }
}

TEST_CASE("risk_interval: bounds are ordered, clamped, and monotone in s") {
  const int K = 60;
  double prev_hi = 0.0;
  for (int s : {0, 1, 2, 5, 10, 20, 40, 59, 60}) {
    const RiskInterval ri = risk_interval(K, s, 1e-4);
    CHECK(ri.lo >= 0.0);
    CHECK(ri.lo <= ri.hi);
    CHECK(ri.hi <= 1.0);
    CHECK(ri.hi >= prev_hi - 1e-12);
    prev_hi = ri.hi;
  }
}

TEST_CASE("risk_interval brackets the exact risk of a matched scalar program") {
  // Scenario program with relaxation whose optimizer is known in closed
  // form: minimize sum_k xi_k over 0 <= x <= q, xi >= 0, x >= delta_k - xi_k
  // with delta ~ U[0,1]. Pushing x up is free, so x* = q, the active samples
  // are those with delta_k >= q, and the true risk is exactly 1 - q.
  Rng rng(314159);
  for (const auto& [K, q, beta] : std::vector<std::tuple<int, double, double>>{
           {1000, 0.9, 1e-5}, {500, 0.95, 1e-4}, {2000, 0.99, 1e-4}}) {
    int s_star = 0;
    for (int k = 0; k < K; ++k) {
      if (rng.uniform01() >= q) ++s_star;
    }
    const RiskInterval ri = risk_interval(K, s_star, beta);
    const double true_risk = 1.0 - q;
    CHECK(ri.lo <= true_risk);
    CHECK(ri.hi >= true_risk);
    if (s_star >= 1) CHECK(ri.hi <= theta_bound(K, s_star, beta));
  }
}

TEST_CASE("risk_interval: argument validation") {
  CHECK_THROWS_AS(risk_interval(10, -1, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(risk_interval(10, 11, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(risk_interval(10, 5, 0.0), std::invalid_argument);
}

TEST_CASE("theta_bound: frozen reference against a long-double evaluation") {
  const double theta = theta_bound(1000, 100, 1e-5);
  CHECK(theta == doctest::Approx(0.29613312527882).epsilon(1e-9));

  const long double rs = sqrtl(100.0L);
  const long double lambda = logl(1e-5L / 202.0L + expl(1.0L / rs)) + rs / (rs + 1.0L);
  const long double theta_ld = 100.0L / 1000.0L + ((rs + 1.0L) / 1000.0L) * (lambda + logl(2.0L / 1e-5L) + logl(101.0L));
  CHECK(std::abs(theta - static_cast<double>(theta_ld)) <= 1e-10);
}

TEST_CASE("theta_bound: clamping, monotonicity in beta, and errors") {
  CHECK(theta_bound(2, 2, 0.5) == 1.0);  // raw value above one is clamped
  CHECK(theta_bound(1000, 100, 1e-6) > theta_bound(1000, 100, 1e-5));
  CHECK_THROWS_AS(theta_bound(10, 0, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(theta_bound(10, 3, 1.5), std::invalid_argument);
}

TEST_CASE("dominance: the upper risk bound never exceeds theta") {
  for (int K : {20, 100, 500}) {
    for (int s : {1, 2, 5, 10, 19}) {
      const RiskInterval ri = risk_interval(K, s, 1e-5);
      CHECK(ri.hi <= theta_bound(K, s, 1e-5) + 1e-12);
    }
  }
}

TEST_CASE("make_certificate_report assembles every bound") {
  const CertificateReport r = make_certificate_report(400, 1e-4, 4, 14);
  CHECK(r.K == 400);
  CHECK(r.s == 4);
  CHECK(r.eps_posteriori == doctest::Approx(eps_posteriori(400, 1e-4, 4)));
  REQUIRE(r.eps_apriori.has_value());
  CHECK(*r.eps_apriori == doctest::Approx(eps_apriori(400, 14, 1e-4)));
  CHECK(r.risk_lo <= r.risk_hi);
  REQUIRE(r.theta.has_value());
  CHECK(r.risk_hi <= *r.theta + 1e-12);

  const CertificateReport zero = make_certificate_report(400, 1e-4, 0);
  CHECK_FALSE(zero.theta.has_value());
  CHECK_FALSE(zero.eps_apriori.has_value());
}
