#include "fastga/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fastga::bounds {

namespace {

struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// sum_{i=1}^{k} i^(-alpha), smallest terms first for alpha > 0.
double power_sum(double alpha, std::uint64_t k) {
  CompensatedSum s;
  if (alpha > 0.0) {
    for (std::uint64_t i = k; i >= 1; --i) s.add(std::pow(static_cast<double>(i), -alpha));
  } else {
    for (std::uint64_t i = 1; i <= k; ++i) s.add(std::pow(static_cast<double>(i), -alpha));
  }
  return s.value();
}

void check_beta(double beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
}

AsymptoticBound make(BoundKind kind, std::string cell, std::string expression, std::string regime,
                     double value) {
  return {kind, std::move(cell), std::move(expression), std::move(regime), value};
}

}  // namespace

double AnalysisConstants::c_prime() {
  return (1.0 / std::numbers::e) * (1.0 - std::exp(-std::exp(-1.5)));
}

double harmonic_sum_exact(double alpha, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("harmonic sum needs k >= 1");
  return power_sum(alpha, k);
}

double harmonic_lower_bound(double alpha, double s) {
  if (!(s >= 1.0)) throw std::invalid_argument("harmonic lower bound needs s >= 1");
  if (alpha == 1.0) return std::log(s);
  return (std::pow(s, 1.0 - alpha) - 1.0) / (1.0 - alpha);
}

double harmonic_upper_bound(double alpha, std::uint64_t u) {
  if (u == 0) throw std::invalid_argument("harmonic upper bound needs u >= 1");
  const double ud = static_cast<double>(u);
  if (alpha < 0.0) return std::pow(ud, 1.0 - alpha) * (2.0 - alpha) / (1.0 - alpha);
  if (alpha < 1.0) return std::pow(ud, 1.0 - alpha) / (1.0 - alpha);
  if (alpha > 1.0) return alpha / (alpha - 1.0);
  return std::log(ud) + 1.0;
}

std::pair<double, double> bernoulli_amplification(double p, double lambda) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const double lhs = -std::expm1(lambda * std::log1p(-p));
  const double rhs = lambda * p / (1.0 + lambda * p);
  return {lhs, rhs};
}

double expected_lambda_exact(double beta, std::uint64_t u) {
  check_beta(beta);
  if (u == 0) throw std::invalid_argument("u must be at least 1");
  return power_sum(beta - 1.0, u) / power_sum(beta, u);
}

LambdaMoment expected_lambda_class(double beta) {
  check_beta(beta);
  if (beta > 2.0) return LambdaMoment::kConstant;
  if (beta == 2.0) return LambdaMoment::kLogU;
  if (beta > 1.0) return LambdaMoment::kPowerU;
  if (beta == 1.0) return LambdaMoment::kULogU;
  return LambdaMoment::kLinearU;
}

std::string to_string(LambdaMoment m) {
  switch (m) {
    case LambdaMoment::kConstant: return "Theta(1)";
    case LambdaMoment::kLogU: return "Theta(log u)";
    case LambdaMoment::kPowerU: return "Theta(u^(2-beta))";
    case LambdaMoment::kULogU: return "Theta(u/log u)";
    case LambdaMoment::kLinearU: return "Theta(u)";
  }
  return "?";
}

std::string render(const AsymptoticBound& b) {
  switch (b.kind) {
    case BoundKind::kOmega: return "Omega(" + b.expression + ")";
    case BoundKind::kBigO: return "O(" + b.expression + ")";
    case BoundKind::kAtLeast: return ">= " + b.expression;
  }
  return b.expression;
}

AsymptoticBound progress_bound(double beta, std::uint64_t u, std::uint64_t n, std::uint64_t d) {
  check_beta(beta);
  if (u == 0) throw std::invalid_argument("u must be at least 1");
  if (d < 1 || d > n) throw std::invalid_argument("distance d must lie in [1, n]");

  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double ud = static_cast<double>(u);
  const double s = std::sqrt(nd / dd);
  const bool small_u = ud <= s;
  const std::string col = small_u ? "u<=sqrt(n/d)" : "u>sqrt(n/d)";

  if (beta > 3.0) {
    return make(BoundKind::kOmega, "progress/beta>3", "d/n", "beta > 3, any u", dd / nd);
  }
  if (beta == 3.0) {
    if (small_u) {
      return make(BoundKind::kOmega, "progress/beta=3/" + col, "d*log(u)/n", "beta = 3, " + col,
                  dd * std::log(ud) / nd);
    }
    return make(BoundKind::kOmega, "progress/beta=3/" + col, "(log(n/d) + 1)/(n/d)", "beta = 3, " + col,
                (std::log(nd / dd) + 1.0) / (nd / dd));
  }
  if (beta > 1.0) {
    if (small_u) {
      return make(BoundKind::kOmega, "progress/beta(1,3)/" + col, "d*u^(3-beta)/n", "1 < beta < 3, " + col,
                  dd * std::pow(ud, 3.0 - beta) / nd);
    }
    return make(BoundKind::kOmega, "progress/beta(1,3)/" + col, "sqrt(n/d)^(1-beta)", "1 < beta < 3, " + col,
                std::pow(s, 1.0 - beta));
  }
  if (beta == 1.0) {
    if (small_u) {
      // Undefined (infinite) at u = 1 where log(u) = 0, exactly as printed.
      return make(BoundKind::kOmega, "progress/beta=1/" + col, "d*u^2/(n*log(u))", "beta = 1, " + col,
                  dd * ud * ud / (nd * std::log(ud)));
    }
    return make(BoundKind::kAtLeast, "progress/beta=1/" + col,
                "C*(1 + ln(u) - ln(sqrt(n/d)))/(36*ln(u))", "beta = 1, " + col,
                AnalysisConstants::kPlaceholder * (1.0 + std::log(ud) - std::log(s)) / (36.0 * std::log(ud)));
  }
  if (small_u) {
    return make(BoundKind::kOmega, "progress/beta<1/" + col, "d*u^2/n", "beta < 1, " + col, dd * ud * ud / nd);
  }
  return make(BoundKind::kOmega, "progress/beta<1/" + col, "1", "beta < 1, " + col, 1.0);
}

RuntimeBounds runtime_bound(double beta, std::uint64_t u, std::uint64_t n) {
  check_beta(beta);
  if (u == 0) throw std::invalid_argument("u must be at least 1");
  if (n == 0) throw std::invalid_argument("n must be at least 1");

  const double nd = static_cast<double>(n);
  const double ud = static_cast<double>(u);
  const double ln_n = std::log(nd);
  const double lnln_n = std::log(ln_n);
  // n / u^2 * log(n / u^2), the common small-u factor.
  const double log_ratio = std::log(nd / (ud * ud));

  // A threshold that is not a number (tiny n) puts every u in the large regime.
  auto at_least = [&](double threshold) { return std::isnan(threshold) || ud >= threshold; };

  auto cells = [](const std::string& row, const std::string& regime, BoundKind k, std::string ti_expr,
                  double ti, std::string tf_expr, double tf) {
    return RuntimeBounds{make(k, "iterations/" + row, std::move(ti_expr), regime, ti),
                         make(k, "evaluations/" + row, std::move(tf_expr), regime, tf)};
  };
  const BoundKind O = BoundKind::kBigO;

  if (beta > 3.0) {
    return cells("beta>3", "beta > 3, any u", O, "n*log(n)", nd * ln_n, "n*log(n)", nd * ln_n);
  }
  if (beta == 3.0) {
    const double thr = std::pow(nd, 1.0 / lnln_n);
    if (at_least(thr)) {
      const double v = nd * std::log(std::log(ud));
      return cells("beta=3/u>=n^(1/lnln(n))", "beta = 3, u >= n^(1/ln ln n)", O, "n*log(log(u))", v,
                   "n*log(log(u))", v);
    }
    const double v = nd / std::log(ud) * log_ratio;
    return cells("beta=3/u<n^(1/lnln(n))", "beta = 3, u < n^(1/ln ln n)", O, "n/log(u)*log(n/u^2)", v,
                 "n/log(u)*log(n/u^2)", v);
  }
  if (beta > 1.0) {
    const double thr = std::pow(ln_n, 1.0 / (3.0 - beta));
    const bool large = at_least(thr);
    const double ti_small = nd / std::pow(ud, 3.0 - beta) * log_ratio;
    const std::string ti_small_expr = "n/u^(3-beta)*log(n/u^2)";
    if (beta > 2.0) {
      if (large) {
        return cells("beta(2,3)/u>=ln(n)^(1/(3-beta))", "2 < beta < 3, u >= ln(n)^(1/(3-beta))", O, "n", nd,
                     "n", nd);
      }
      return cells("beta(2,3)/u<ln(n)^(1/(3-beta))", "2 < beta < 3, u < ln(n)^(1/(3-beta))", O, ti_small_expr,
                   ti_small, ti_small_expr, ti_small);
    }
    if (beta == 2.0) {
      // ln(n)^(1/(3-beta)) = ln(n) here, so both columns share the threshold.
      if (large) {
        return cells("beta=2/u>=ln(n)", "beta = 2, u >= ln(n)", O, "n", nd, "n*log(u)", nd * std::log(ud));
      }
      return cells("beta=2/u<ln(n)", "beta = 2, u < ln(n)", O, ti_small_expr, ti_small,
                   "n*log(u)/u*log(n/u^2)", nd * std::log(ud) / ud * log_ratio);
    }
    if (large) {
      return cells("beta(1,2)/u>=ln(n)^(1/(3-beta))", "1 < beta < 2, u >= ln(n)^(1/(3-beta))", O, "n", nd,
                   "n*u^(2-beta)", nd * std::pow(ud, 2.0 - beta));
    }
    return cells("beta(1,2)/u<ln(n)^(1/(3-beta))", "1 < beta < 2, u < ln(n)^(1/(3-beta))", O, ti_small_expr,
                 ti_small, "n/u*log(n/u^2)", nd / ud * log_ratio);
  }
  if (beta == 1.0) {
    const double thr = std::sqrt(ln_n * lnln_n);
    if (at_least(thr)) {
      return cells("beta=1/u>=sqrt(ln(n)lnln(n))", "beta = 1, u >= sqrt(ln n ln ln n)", O, "n", nd,
                   "n*u/log(u)", nd * ud / std::log(ud));
    }
    return cells("beta=1/u<sqrt(ln(n)lnln(n))", "beta = 1, u < sqrt(ln n ln ln n)", O,
                 "n/u^2*log(n/u^2)*log(u)", nd / (ud * ud) * log_ratio * std::log(ud), "n/u*log(n/u^2)",
                 nd / ud * log_ratio);
  }
  const double thr = std::sqrt(ln_n);
  if (at_least(thr)) {
    return cells("beta<1/u>=sqrt(ln(n))", "beta < 1, u >= sqrt(ln n)", O, "n", nd, "n*u", nd * ud);
  }
  return cells("beta<1/u<sqrt(ln(n))", "beta < 1, u < sqrt(ln n)", O, "n/u^2*log(n/u^2)",
               nd / (ud * ud) * log_ratio, "n/u*log(n/u^2)", nd / ud * log_ratio);
}

double leading_constant(double beta) {
  if (!(beta > 2.0 && beta < 3.0)) {
    throw std::invalid_argument("leading constant is only defined for 2 < beta < 3");
  }
  return 328.0 * beta * (5.0 - beta) / ((3.0 - beta) * (beta - 2.0));
}

}  // namespace fastga::bounds
