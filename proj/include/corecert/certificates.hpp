#pragma once

#include <optional>

namespace corecert {

// ln C(n, k) via log-gamma; exact enough for n up to the 4K range used by
// the risk-interval polynomials, where C(n, k) overflows any float width.
double ln_binomial(int n, int k);

// A-posteriori violation level eps(s) for a scenario program whose
// compression set has cardinality s out of K samples, at confidence beta.
// The family splits beta uniformly across s = 0..K-1:
//   eps(s) = 1 - ((beta/K) / C(K,s))^(1/(K-s)),  eps(K) = 1,
// so that sum_{s=0}^{K-1} C(K,s) (1 - eps(s))^(K-s) = beta holds exactly.
double eps_posteriori(int K, double beta, int s);

// 1 - eps(s) computed directly in log space. For s near K the complement
// underflows the double spacing at 1, so identity checks should use this
// form rather than reconstructing it from eps_posteriori.
double eps_posteriori_complement(int K, double beta, int s);

// A-priori violation level: the single eps with C(K,d) (1-eps)^(K-d) = beta,
// where d bounds the compression cardinality (2^n - 2 for a game with n
// agents). Requires K > d.
double eps_apriori(int K, int d, double beta);

struct RiskInterval {
  double lo = 0.0;  // eps_lower(s)
  double hi = 1.0;  // eps_upper(s)
};

struct RiskPolynomialRoots {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

// The nonnegative roots underlying risk_interval, exposed so residuals can
// be checked against the defining polynomials. For s = K, t_lo is 0 by
// definition and t_hi is the single root of the upper-group equation.
RiskPolynomialRoots risk_interval_roots(int K, int s, double beta);

// Two-sided risk bounds for a relaxed scenario program with s active samples
// out of K, at confidence beta. The bounds come from the two nonnegative
// roots t_lo <= t_hi of the degree-(4K-s) polynomial
//   C(K,s) t^(K-s) - (beta/2K) sum_{i=s}^{K-1} C(i,s) t^(i-s)
//                  - (beta/6K) sum_{i=K+1}^{4K} C(i,s) t^(i-s) = 0
// (for s = K, the single root of 1 - (beta/6K) sum_{i=K+1}^{4K} C(i,K)
// t^(i-K) = 0 with t_lo defined as 0), mapped through
//   lo = max{0, 1 - t_hi},  hi = 1 - t_lo.
// Evaluation is in log space; roots are isolated by minimizing the convex
// normalized term sum and bisecting on both flanks. Throws NumericalError
// if a bracket cannot be established.
RiskInterval risk_interval(int K, int s, double beta);

// Directly computable upper bound theta(s) >= eps_upper(s), s >= 1:
//   theta = s/K + ((sqrt(s)+1)/K) (lambda + ln(2/beta) + ln(s+1)),
//   lambda = ln(beta/(2(s+1)) + e^(1/sqrt(s))) + sqrt(s)/(sqrt(s)+1),
// clamped to 1. s = 0 is undefined (use risk_interval instead).
double theta_bound(int K, int s, double beta);

// Bundle of every certificate for one (K, beta, s) triple. apriori_d, when
// given, must satisfy K > d; theta is filled only for s >= 1.
struct CertificateReport {
  int K = 0;
  double beta = 0.0;
  int s = 0;
  double eps_posteriori = 1.0;
  std::optional<double> eps_apriori;
  double risk_lo = 0.0;
  double risk_hi = 1.0;
  std::optional<double> theta;
};

CertificateReport make_certificate_report(int K, double beta, int s, std::optional<int> apriori_d = std::nullopt);

}  // namespace corecert
