#include "tripop/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tripop/error.hpp"

namespace tripop {

namespace {

bool is_odd(long long v) { return v % 2 != 0; }
bool is_even(long long v) { return v % 2 == 0; }

void require_unit_sign(int value, const char* name) {
  if (value != 1 && value != -1) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(name) + " must be +1 or -1, got " + std::to_string(value));
  }
}

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

}  // namespace

bool OddPair::valid() const noexcept {
  return both_odd() && static_cast<long long>(n1()) * n2() > 0;
}

std::optional<OddPair> odd_pair_from_n(int n1, int n2) noexcept {
  const int a = 2 * n1 - n2;
  const int b = 2 * n2 - n1;
  if (a % 3 != 0 || b % 3 != 0) return std::nullopt;
  OddPair pair{a / 3, b / 3};
  if (!pair.valid()) return std::nullopt;
  return pair;
}

CouplingRatios TransferCondition::level2_ratios() const noexcept {
  if (target == Target::Level3) return {beta, alpha, {0.0, 0.0, 0.0}};
  return ratios();
}

long long CaseClassification::product_case_i() const noexcept {
  const long long k = case_i.k, kp = case_i.kp;
  return (k - kp) * (2 * k + kp);
}

long long CaseClassification::product_case_ii() const noexcept {
  const long long k = case_ii.k, kp = case_ii.kp;
  return (2 * k + kp) * (k + 2 * kp);
}

long long CaseClassification::product_case_iii() const noexcept {
  const long long k = case_iii.k, kp = case_iii.kp;
  return (2 * kp + k) * (kp - k);
}

bool CaseClassification::parities_hold() const noexcept {
  return is_even(case_i.k) && is_odd(case_i.kp) && is_odd(case_ii.k) && is_odd(case_ii.kp) &&
         is_odd(case_iii.k) && is_even(case_iii.kp);
}

TransferCondition condition_from_odd_pair(OddPair pair, int sign, int beta) {
  require_unit_sign(sign, "sign");
  require_unit_sign(beta, "beta");
  if (!pair.valid()) {
    throw Error(ErrorCode::InvalidPair, "odd pair (" + std::to_string(pair.n_o) + ", " +
                                            std::to_string(pair.n_op) +
                                            ") must be odd/odd with n1*n2 > 0");
  }
  TransferCondition cond;
  cond.pair = pair;
  cond.n1 = pair.n1();
  cond.n2 = pair.n2();
  cond.sign = sign;
  cond.r = sign * std::sqrt(2.0 / static_cast<double>(cond.product()));
  cond.alpha = cond.r * (cond.n2 - cond.n1);
  cond.beta = beta;
  cond.action_t0 = std::numbers::pi / (3.0 * cond.r);
  cond.target = Target::Level2;
  return cond;
}

std::vector<TransferCondition> enumerate_conditions(long long max_product) {
  std::vector<TransferCondition> out;
  for (long long product = 1; product <= max_product; ++product) {
    for (long long n1 = 1; n1 <= product; n1 += 2) {
      if (product % n1 != 0) continue;
      const long long n2 = product / n1;
      if (n2 % 2 == 0) continue;
      const auto pair = odd_pair_from_n(static_cast<int>(n1), static_cast<int>(n2));
      if (!pair) continue;
      out.push_back(condition_from_odd_pair(*pair, +1));
      out.push_back(condition_from_odd_pair(*pair, -1));
    }
  }
  return out;
}

CaseClassification classify_cases(const TransferCondition& cond) {
  const int n1 = cond.n1;
  const int n2 = cond.n2;
  CaseClassification c;
  c.case_i = {(n1 + n2) / 3, (n2 - 2 * n1) / 3};
  c.case_ii = {(2 * n1 - n2) / 3, (2 * n2 - n1) / 3};
  c.case_iii = {(n1 - 2 * n2) / 3, (n1 + n2) / 3};
  c.e_value = cond.action_t0 / std::numbers::pi;
  return c;
}

PopulationSample populations_closed_form(const TransferCondition& cond, double action) noexcept {
  const double n1 = cond.n1;
  const double n2 = cond.n2;
  const double sum = n1 + n2;
  const double theta = cond.r * action;
  const double common = n1 * n1 + n2 * n2 + n1 * n2 * (1.0 + std::cos(sum * theta));
  const double side =
      sum * (n1 * std::cos((2.0 * n1 - n2) * theta) + n2 * std::cos((2.0 * n2 - n1) * theta));
  const double pre = 1.0 / (2.0 * sum * sum);
  const double s = std::sin(0.5 * sum * theta);

  PopulationSample p{pre * (common + side), pre * (common - side), p3_max(cond) * s * s};
  if (cond.target == Target::Level3) std::swap(p.p2, p.p3);
  return p;
}

double p3_max(const TransferCondition& cond) noexcept {
  const double n1 = cond.n1;
  const double n2 = cond.n2;
  return 2.0 * n1 * n2 / ((n1 + n2) * (n1 + n2));
}

std::optional<TransferCondition> validate_condition(double alpha, double beta, double action_t0,
                                                    double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(action_t0)) {
    return std::nullopt;
  }
  if (std::abs(std::abs(beta) - 1.0) > tol || action_t0 == 0.0) return std::nullopt;

  const double abs_alpha = std::abs(alpha);
  const double abs_action = std::abs(action_t0);
  const double e = 3.0 * abs_action / std::numbers::pi;
  const double bound = 2.0 * e * e * (1.0 + tol) * (1.0 + tol);
  const auto max_product = static_cast<long long>(std::floor(bound));

  for (const auto& cand : enumerate_conditions(max_product)) {
    if (cand.sign != 1) continue;
    const double cand_alpha = std::abs(cand.alpha);
    const double d_alpha = std::abs(cand_alpha - abs_alpha);
    if (d_alpha != 0.0 && d_alpha > tol * std::max(abs_alpha, cand_alpha)) continue;
    if (std::abs(cand.action_t0 - abs_action) > tol * abs_action) continue;

    // Orient (n1, n2) so the stored alpha carries the requested sign.
    const int sign = sign_of(action_t0);
    int n1 = cand.n1;
    int n2 = cand.n2;
    if (alpha != 0.0 && sign_of(sign * static_cast<double>(n2 - n1)) != sign_of(alpha)) {
      std::swap(n1, n2);
    }
    const auto pair = odd_pair_from_n(n1, n2);
    if (!pair) continue;
    return condition_from_odd_pair(*pair, sign, sign_of(beta));
  }
  return std::nullopt;
}

TransferCondition condition_for_target(OddPair pair, int sign, Target target, int beta) {
  TransferCondition cond = condition_from_odd_pair(pair, sign, beta);
  if (target == Target::Level3) {
    std::swap(cond.alpha, cond.beta);
    cond.target = Target::Level3;
  }
  return cond;
}

}  // namespace tripop
