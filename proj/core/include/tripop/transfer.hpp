#pragma once

// Odd-integer families of complete 1 -> 2 population transfer.
//
// Any two odd integers (n_o, n_o') give n1 = 2 n_o + n_o', n2 = n_o + 2 n_o'
// and r = +-sqrt(2 / (n1 n2)). With beta = +-1, alpha = r (n2 - n1) and an
// action A(t0) = pi / (3 r) the population sits entirely in level 2 at t0.
//
// Sign convention: populations are even in the action and symmetric under
// n1 <-> n2, so (+-alpha, beta = +-1) all transfer completely; this library
// stores alpha = r (n2 - n1) and A(t0) = pi / (3 r) with r carrying `sign`.

#include <optional>
#include <vector>

#include "tripop/dressed.hpp"

namespace tripop {

struct OddPair {
  int n_o = 1;
  int n_op = 1;

  int n1() const noexcept { return 2 * n_o + n_op; }
  int n2() const noexcept { return n_o + 2 * n_op; }
  int n_e() const noexcept { return n_o + n_op; }
  bool both_odd() const noexcept { return (n_o % 2 != 0) && (n_op % 2 != 0); }
  /// Both odd and n1 n2 > 0 (the P3 >= 0 requirement).
  bool valid() const noexcept;

  friend bool operator==(const OddPair&, const OddPair&) = default;
};

/// Inverse map; empty when (n1, n2) is not generated by any odd pair.
std::optional<OddPair> odd_pair_from_n(int n1, int n2) noexcept;

enum class Target : int { Level2 = 2, Level3 = 3 };

struct TransferCondition {
  OddPair pair;
  int n1 = 0;
  int n2 = 0;
  double r = 0.0;
  /// Coupling ratios as applied to the atom. For Target::Level3 the roles of
  /// alpha and beta are interchanged (alpha = +-1, beta = r (n2 - n1)).
  double alpha = 0.0;
  double beta = 1.0;
  double action_t0 = 0.0;
  int sign = 1;
  Target target = Target::Level2;

  long long product() const noexcept { return static_cast<long long>(n1) * n2; }
  CouplingRatios ratios() const noexcept { return {alpha, beta, {0.0, 0.0, 0.0}}; }
  /// Ratios of the level-2 problem the condition was derived from.
  CouplingRatios level2_ratios() const noexcept;
  int target_level() const noexcept { return static_cast<int>(target); }
};

struct KPair {
  int k = 0;
  int kp = 0;
  friend bool operator==(const KPair&, const KPair&) = default;
};

struct CaseClassification {
  KPair case_i;    // k even, k' odd
  KPair case_ii;   // k odd,  k' odd
  KPair case_iii;  // k odd,  k' even
  double e_value = 0.0;  // A(t0) / pi

  /// Products (k-k')(2k+k'), (2k+k')(k+2k'), (2k'+k)(k'-k) in exact integers.
  long long product_case_i() const noexcept;
  long long product_case_ii() const noexcept;
  long long product_case_iii() const noexcept;
  bool parities_hold() const noexcept;
};

/// Throws Error{InvalidPair} when the pair is not odd/odd with n1 n2 > 0 and
/// Error{InvalidArgument} when sign or beta is not +-1.
TransferCondition condition_from_odd_pair(OddPair pair, int sign = 1, int beta = 1);

/// Every family member with 0 < n1 n2 <= max_product and n1, n2 > 0, with
/// both signs of r, sorted by (n1 n2, n1, sign descending). beta = +1.
std::vector<TransferCondition> enumerate_conditions(long long max_product);

CaseClassification classify_cases(const TransferCondition& cond);

/// Closed-form populations as functions of r A. For Target::Level3 the
/// level-2 and level-3 entries are interchanged.
PopulationSample populations_closed_form(const TransferCondition& cond, double action) noexcept;

/// Peak of P3 over all actions: 2 n1 n2 / (n1 + n2)^2 (<= 1/2).
double p3_max(const TransferCondition& cond) noexcept;

/// Family member whose |alpha| and |A(t0)| match within relative tolerance
/// `tol`, with beta = +-1; signs are then reconciled to the inputs.
std::optional<TransferCondition> validate_condition(double alpha, double beta, double action_t0,
                                                    double tol = 1e-6);

/// Level-3 variant of the family: indices 2 and 3 are interchanged, which
/// swaps alpha with beta. Target::Level2 returns condition_from_odd_pair.
TransferCondition condition_for_target(OddPair pair, int sign, Target target, int beta = 1);

}  // namespace tripop
