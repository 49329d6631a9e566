#include "corecert/certificates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "corecert/errors.hpp"

namespace corecert {

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("confidence beta must lie in (0, 1), got " + std::to_string(beta));
  }
}

void check_complexity(int K, int s) {
  if (K < 1) throw std::invalid_argument("sample count K must be >= 1");
  if (s < 0 || s > K) {
    throw std::invalid_argument("complexity s = " + std::to_string(s) + " out of range [0, " + std::to_string(K) + "]");
  }
}

// Normalized evaluator for the risk-interval polynomials. Dividing the
// degree-(4K-s) polynomial by its positive leading group C(K,s) t^(K-s)
// turns the root condition into Q(t) = 1 with
//   Q(t) = sum_lower + sum_upper,
//   sum_lower = (beta/2K) sum_{i=s}^{K-1} [C(i,s)/C(K,s)] t^(i-K),
//   sum_upper = (beta/6K) sum_{i=K+1}^{4K} [C(i,s)/C(K,s)] t^(i-K).
// Both groups are positive sums of pure powers, so Q is convex on t > 0 and
// {Q < 1} is exactly the open interval between the two roots. The evaluator
// works with ln Q via a streaming log-sum-exp: the value stays finite and
// strictly ordered even where Q itself overflows, which the bracketing
// search relies on. Roots satisfy ln Q = 0.
//
// For s = K the lower group is absent and C(K,K) t^0 = 1 needs no
// normalization; ln Q is then strictly increasing in t.
class RiskPolynomial {
 public:
  RiskPolynomial(int K, int s, double beta) : K_(K), s_(s) {
    const int top = 4 * K_;
    ln_coeff_.resize(static_cast<std::size_t>(top - s_) + 1);
    double ln_c = 0.0;  // ln C(s, s)
    ln_coeff_[0] = 0.0;
    for (int i = s_ + 1; i <= top; ++i) {
      ln_c += std::log(static_cast<double>(i)) - std::log(static_cast<double>(i - s_));
      ln_coeff_[static_cast<std::size_t>(i - s_)] = ln_c;
    }
    ln_norm_ = ln_coeff_[static_cast<std::size_t>(K_ - s_)];
    ln_pref_lower_ = std::log(beta) - std::log(2.0 * K_);
    ln_pref_upper_ = std::log(beta) - std::log(6.0 * K_);
  }

  // ln Q(t); t = 0 maps to +inf when the lower group is present, else -inf.
  double log_value(double t) const {
    if (t <= 0.0) {
      return s_ < K_ ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    const double ln_t = std::log(t);
    double running_max = -std::numeric_limits<double>::infinity();
    long double scaled_sum = 0.0L;  // sum of exp(term - running_max)
    auto accumulate = [&](double e) {
      if (e <= running_max) {
        scaled_sum += expl(static_cast<long double>(e - running_max));
      } else {
        scaled_sum = scaled_sum * expl(static_cast<long double>(running_max - e)) + 1.0L;
        running_max = e;
      }
    };
    if (s_ < K_) {
      for (int i = s_; i < K_; ++i) {
        accumulate(ln_pref_lower_ + ln_coeff_[static_cast<std::size_t>(i - s_)] - ln_norm_ + (i - K_) * ln_t);
      }
    }
    for (int i = K_ + 1; i <= 4 * K_; ++i) {
      accumulate(ln_pref_upper_ + ln_coeff_[static_cast<std::size_t>(i - s_)] - ln_norm_ + (i - K_) * ln_t);
    }
    return running_max + static_cast<double>(logl(scaled_sum));
  }

 private:
  int K_;
  int s_;
  double ln_norm_ = 0.0;
  double ln_pref_lower_ = 0.0;
  double ln_pref_upper_ = 0.0;
  std::vector<double> ln_coeff_;
};

// Bisects ln Q(t) = 0 on [lo, hi] assuming a single sign change.
double bisect_level_one(const RiskPolynomial& q, double lo, double hi, bool below_at_lo) {
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-15 * std::max(std::abs(lo), std::abs(hi)); ++iter) {
    const double mid = 0.5 * (lo + hi);
    const bool below = q.log_value(mid) < 0.0;
    if (below == below_at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double ln_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) throw std::invalid_argument("ln_binomial: need 0 <= k <= n");
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double eps_posteriori_complement(int K, double beta, int s) {
  check_beta(beta);
  check_complexity(K, s);
  if (s == K) return 0.0;
  const double ln_term = (std::log(beta) - std::log(static_cast<double>(K)) - ln_binomial(K, s)) / (K - s);
  return std::exp(ln_term);
}

double eps_posteriori(int K, double beta, int s) {
  check_beta(beta);
  check_complexity(K, s);
  if (s == K) return 1.0;
  const double ln_term = (std::log(beta) - std::log(static_cast<double>(K)) - ln_binomial(K, s)) / (K - s);
  return -std::expm1(ln_term);
}

double eps_apriori(int K, int d, double beta) {
  check_beta(beta);
  if (d < 0) throw std::invalid_argument("eps_apriori: complexity bound d must be nonnegative");
  if (K <= d) {
    throw std::invalid_argument("eps_apriori: need K > d (got K = " + std::to_string(K) + ", d = " + std::to_string(d) +
                                ")");
  }
  const double ln_term = (std::log(beta) - ln_binomial(K, d)) / (K - d);
  return -std::expm1(ln_term);
}

RiskPolynomialRoots risk_interval_roots(int K, int s, double beta) {
  check_beta(beta);
  check_complexity(K, s);
  const RiskPolynomial q(K, s, beta);

  if (s == K) {
    // Single root: ln Q is strictly increasing, so expand until positive.
    double hi = 1.0;
    int doublings = 0;
    while (q.log_value(hi) <= 0.0) {
      hi *= 2.0;
      if (++doublings > 64) throw NumericalError("risk_interval: no upper bracket for the s = K equation");
    }
    return {0.0, bisect_level_one(q, 0.0, hi, true)};
  }

  // Left edge: ln Q -> +inf as t -> 0, so shrink until above the level.
  double t_left = 1e-12;
  int shrinks = 0;
  while (q.log_value(t_left) <= 0.0) {
    t_left *= 1e-2;
    if (++shrinks > 64) throw NumericalError("risk_interval: no left bracket above the root level");
  }
  // Right edge: the positive-power group dominates for large t.
  double t_right = 2.0;
  int doublings = 0;
  while (q.log_value(t_right) <= 0.0) {
    t_right *= 2.0;
    if (++doublings > 64) throw NumericalError("risk_interval: no right bracket above the root level");
  }

  // Q is convex, so ln Q is unimodal under the log reparameterization:
  // golden section finds a point strictly inside {Q < 1} when one exists.
  double a = std::log(t_left), b = std::log(t_right);
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double u1 = b - golden * (b - a), u2 = a + golden * (b - a);
  double q1 = q.log_value(std::exp(u1)), q2 = q.log_value(std::exp(u2));
  double best_u = q1 < q2 ? u1 : u2;
  double best_q = std::min(q1, q2);
  for (int iter = 0; iter < 400 && (b - a) > 1e-12; ++iter) {
    if (q1 <= q2) {
      b = u2;
      u2 = u1;
      q2 = q1;
      u1 = b - golden * (b - a);
      q1 = q.log_value(std::exp(u1));
    } else {
      a = u1;
      u1 = u2;
      q1 = q2;
      u2 = a + golden * (b - a);
      q2 = q.log_value(std::exp(u2));
    }
    if (q1 < best_q) {
      best_q = q1;
      best_u = u1;
    }
    if (q2 < best_q) {
      best_q = q2;
      best_u = u2;
    }
    if (best_q < -0.7 && iter > 8) break;  // comfortably inside the root interval
  }
  if (!(best_q < 0.0)) {
    throw NumericalError("risk_interval: polynomial never drops below its root level; no interval exists for K = " +
                         std::to_string(K) + ", s = " + std::to_string(s));
  }
  const double t_mid = std::exp(best_u);

  const double t_lo_root = bisect_level_one(q, t_left, t_mid, false);
  const double t_hi_root = bisect_level_one(q, t_mid, t_right, true);
  return {t_lo_root, t_hi_root};
}

RiskInterval risk_interval(int K, int s, double beta) {
  const RiskPolynomialRoots roots = risk_interval_roots(K, s, beta);
  RiskInterval out;
  out.hi = std::min(1.0, std::max(0.0, 1.0 - roots.t_lo));
  out.lo = std::min(out.hi, std::max(0.0, 1.0 - roots.t_hi));
  return out;
}

double theta_bound(int K, int s, double beta) {
  check_beta(beta);
  check_complexity(K, s);
  if (s == 0) {
    throw std::invalid_argument("theta_bound: undefined at s = 0 (the e^(1/sqrt(s)) term diverges); use risk_interval");
  }
  const double root_s = std::sqrt(static_cast<double>(s));
  const double lambda = std::log(beta / (2.0 * (s + 1)) + std::exp(1.0 / root_s)) + root_s / (root_s + 1.0);
  const double theta =
      static_cast<double>(s) / K + ((root_s + 1.0) / K) * (lambda + std::log(2.0 / beta) + std::log(s + 1.0));
  return std::min(1.0, theta);
}

CertificateReport make_certificate_report(int K, double beta, int s, std::optional<int> apriori_d) {
  CertificateReport report;
  report.K = K;
  report.beta = beta;
  report.s = s;
  report.eps_posteriori = eps_posteriori(K, beta, s);
  if (apriori_d) report.eps_apriori = eps_apriori(K, *apriori_d, beta);
  const RiskInterval ri = risk_interval(K, s, beta);
  report.risk_lo = ri.lo;
  report.risk_hi = ri.hi;
  if (s >= 1) report.theta = theta_bound(K, s, beta);
  return report;
}

}  // namespace corecert
