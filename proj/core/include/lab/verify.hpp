#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lab/constants.hpp"
#include "lab/group.hpp"
#include "lab/weight.hpp"

namespace lab {

enum class TheoremId { RHI, OPEN, WEAK, BUCKLEY, DUALITY, A1 };
std::string theorem_name(TheoremId id);

/// One certified inequality: pass iff lhs <= rhs * (1 + 1e-9). The two
/// equality checks (DUALITY, A1) additionally require rhs <= lhs * (1 + 1e-9).
struct VerificationReport {
  TheoremId id = TheoremId::RHI;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;  // lhs / rhs
  std::string witness;
  bool pass = false;
};

constexpr double kVerifyRelTol = 1e-9;

/// Sharp weak reverse Holder inequality: for every distinct base set U,
/// (avg_U w^r)^(1/r) <= 2 D^2 avg_{U-hat} w with r = 1 + 1/(4 D^10 [w]_fw - 1).
/// Returns the worst-ratio base set.
VerificationReport check_rhi(const GroupModel& model, const Weight& w);

struct RhiRow {
  BaseSetKey set;
  double lhs = 0, rhs = 0, ratio = 0;
};
std::vector<RhiRow> check_rhi_detailed(const GroupModel& model, const Weight& w);

/// Step-1 diagnostic of the same proof: for every U,
/// avg_{U-hat} (M_U w)^(1+eps) <= 2 [w]_fw (avg_{U-hat} w)^(1+eps) with
/// eps = r - 1. Enumerates local bases, so intended for small models.
VerificationReport check_rhi_step1(const GroupModel& model, const Weight& w);

/// Open property: [w]_{A_{p-eps}} <= 2^(p-1) D^(4p-2) [w]_{A_p} with
/// eps = (p-1)/(4 D^10 [sigma]_fw).
VerificationReport check_open_property(const GroupModel& model, const Weight& w, double p);

/// Weak type: sup over lambda of lambda^q w({Mf > lambda}) evaluated exactly
/// at the attained values of Mf, against D^(2q) [w]_{A_q} ||f||^q_{L^q_w}.
VerificationReport check_weak_type(const GroupModel& model, const Weight& w, double q,
                                   const GroupFunction& f);

struct OpNormTestSpec {
  int n_random = 8;
  std::uint64_t seed = 1;
};

struct OpNormEstimate {
  double value = 0;       // max ||Mf|| / ||f|| over the test family
  std::string witness;    // description of the attaining f
  double after_sigma = 0;  // running max after family (i): sigma * chi_U
  double after_chi = 0;    // after adding family (ii): chi_U
};

/// Lower bound for the L^p_w -> L^p_w operator norm of M over the test
/// family (i) sigma chi_U, (ii) chi_U (U over all distinct base sets),
/// (iii) seeded random nonnegative functions.
OpNormEstimate estimate_operator_norm(const GroupModel& model, const Weight& w, double p,
                                      const OpNormTestSpec& spec = {});

struct BuckleyReport {
  VerificationReport report;  // lhs = norm estimate, rhs = mixed bound rhs1
  double rhs2 = 0;            // classical bound C [w]_{A_p}^{1/(p-1)}
  bool mixed_pass = false;    // lhs <= rhs1
  bool fold_pass = false;     // rhs1 <= rhs2
};

/// Mixed Buckley bound: norm estimate <= C(p,D) ([w]_{A_p} [sigma]_fw)^(1/p),
/// and the fold into the classical bound C(p,D) [w]_{A_p}^(1/(p-1)). The
/// report passes only when both inequalities hold.
BuckleyReport check_buckley(const GroupModel& model, const Weight& w, double p,
                            const OpNormTestSpec& spec = {});

/// A_1 characterization: max_x Mw(x)/w(x) equals [w]_{A_1} exactly in finite
/// models; certified as a two-sided identity at 1e-9.
VerificationReport check_a1(const GroupModel& model, const Weight& w);

/// Duality identity [sigma]_{A_{p'}} = [w]_{A_p}^(p'-1), two-sided at 1e-9.
VerificationReport check_duality(const GroupModel& model, const Weight& w, double p);

}  // namespace lab
