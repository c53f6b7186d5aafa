#include "lab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lab/decomp.hpp"
#include "lab/maximal.hpp"

namespace lab {

namespace {

std::string key_str(const BaseSetKey& key) {
  std::ostringstream os;
  os << "U(i=" << key.index << ";c=" << key.center << ")";
  return os.str();
}

VerificationReport make_report(TheoremId id, double lhs, double rhs, std::string witness,
                               bool two_sided = false) {
  VerificationReport r;
  r.id = id;
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = lhs / rhs;
  r.witness = std::move(witness);
  r.pass = lhs <= rhs * (1.0 + kVerifyRelTol);
  if (two_sided) r.pass = r.pass && rhs <= lhs * (1.0 + kVerifyRelTol);
  return r;
}

// Circular prefix sums over element ids; range queries in O(1).
class PrefixSums {
 public:
  PrefixSums(const GroupModel& model, const std::vector<double>& values, bool with_mass)
      : n_(model.size()), prefix_(static_cast<size_t>(model.size()) + 1, 0.0) {
    for (int x = 0; x < n_; ++x) {
      const double v = with_mass ? values[static_cast<size_t>(x)] * model.mass(static_cast<ElementId>(x))
                                 : values[static_cast<size_t>(x)];
      prefix_[static_cast<size_t>(x) + 1] = prefix_[static_cast<size_t>(x)] + v;
    }
  }

  double total() const { return prefix_[static_cast<size_t>(n_)]; }

  // Sum over the circular range of `len` ids starting at lo (mod n).
  double range(int lo, int len) const {
    lo %= n_;
    if (lo < 0) lo += n_;
    if (len >= n_) return total();
    if (lo + len <= n_) return prefix_[static_cast<size_t>(lo + len)] - prefix_[static_cast<size_t>(lo)];
    return (total() - prefix_[static_cast<size_t>(lo)]) + prefix_[static_cast<size_t>(lo + len - n_)];
  }

 private:
  int n_;
  std::vector<double> prefix_;
};

// Averages of a pointwise array over the enlarged sets U-hat, keyed by the
// canonical base set. Subgroup families are ultrametric (U-hat = U); interval
// families enlarge the radius from r to 2r; generic models enumerate.
class HatAverager {
 public:
  HatAverager(const GroupModel& model, const std::vector<double>& values)
      : model_(model), avg_(model, std::span<const double>(values)) {
    if (model.structure() == FamilyStructure::Interval) {
      vprefix_.emplace(model, values, /*with_mass=*/true);
      mprefix_.emplace(model, model.masses(), /*with_mass=*/false);
    } else if (model.structure() == FamilyStructure::Generic) {
      values_ = &values;
    }
  }

  double average(const BaseSetKey& key) const {
    switch (model_.structure()) {
      case FamilyStructure::Subgroup:
        return avg_.average(key);
      case FamilyStructure::Interval: {
        if (model_.is_whole_group_index(key.index))
          return vprefix_->total() / mprefix_->total();
        const int r2 = 2 * model_.interval_radius(key.index);
        const int len = std::min(2 * r2 + 1, model_.size());
        return vprefix_->range(key.center - r2, len) / mprefix_->range(key.center - r2, len);
      }
      case FamilyStructure::Generic: {
        const ElementSet h = hat(model_, model_.base_set(key.center, key.index));
        return lab::average(model_, *values_, h);
      }
    }
    return 0;
  }

 private:
  const GroupModel& model_;
  SetAverager avg_;
  std::optional<PrefixSums> vprefix_;
  std::optional<PrefixSums> mprefix_;
  const std::vector<double>* values_ = nullptr;
};

}  // namespace

std::string theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::RHI: return "RHI";
    case TheoremId::OPEN: return "OPEN";
    case TheoremId::WEAK: return "WEAK";
    case TheoremId::BUCKLEY: return "BUCKLEY";
    case TheoremId::DUALITY: return "DUALITY";
    case TheoremId::A1: return "A1";
  }
  return "?";
}

std::vector<RhiRow> check_rhi_detailed(const GroupModel& model, const Weight& w) {
  const double d = model.doubling_constant();
  const double fw = ainfty_fw(model, w).value;
  const double r = rhi_exponent(d, fw);

  std::vector<double> wr(w.values().size());
  for (size_t i = 0; i < wr.size(); ++i) wr[i] = std::pow(w.values()[i], r);
  SetAverager awr(model, std::span<const double>(wr));
  HatAverager hat_avg(model, w.values());

  std::vector<RhiRow> rows;
  rows.reserve(model.distinct_base_sets().size());
  for (const BaseSetKey& key : model.distinct_base_sets()) {
    RhiRow row;
    row.set = key;
    row.lhs = std::pow(awr.average(key), 1.0 / r);
    row.rhs = 2.0 * d * d * hat_avg.average(key);
    row.ratio = row.lhs / row.rhs;
    rows.push_back(row);
  }
  return rows;
}

VerificationReport check_rhi(const GroupModel& model, const Weight& w) {
  const std::vector<RhiRow> rows = check_rhi_detailed(model, w);
  const RhiRow* worst = &rows.front();
  for (const RhiRow& row : rows)
    if (row.ratio > worst->ratio) worst = &row;
  return make_report(TheoremId::RHI, worst->lhs, worst->rhs, key_str(worst->set));
}

VerificationReport check_rhi_step1(const GroupModel& model, const Weight& w) {
  const double d = model.doubling_constant();
  const double fw = ainfty_fw(model, w).value;
  const double eps = rhi_exponent(d, fw) - 1.0;

  VerificationReport worst;
  bool first = true;
  for (const BaseSetKey& key : model.distinct_base_sets()) {
    const BaseSet u = model.base_set(key.center, key.index);
    const ElementSet h = hat(model, u);
    const GroupFunction m = local_maximal(model, w, u);
    std::vector<double> mpow(m.values().size(), 0.0);
    for (ElementId x : h) mpow[static_cast<size_t>(x)] = std::pow(m(x), 1.0 + eps);
    const double lhs = average(model, mpow, h);
    const double rhs = 2.0 * fw * std::pow(average(model, w.values(), h), 1.0 + eps);
    VerificationReport rep = make_report(TheoremId::RHI, lhs, rhs, key_str(key));
    if (first || rep.ratio > worst.ratio) {
      worst = rep;
      first = false;
    }
  }
  return worst;
}

VerificationReport check_open_property(const GroupModel& model, const Weight& w, double p) {
  if (!(p > 1)) throw std::invalid_argument("check_open_property: requires p > 1");
  const double d = model.doubling_constant();
  const double fw_sigma = ainfty_fw(model, dual_weight(model, w, p)).value;
  const double eps = open_epsilon(p, d, fw_sigma);
  const double lhs = ap_constant(model, w, p - eps).value;
  const double rhs = std::pow(2.0, p - 1.0) * std::pow(d, 4.0 * p - 2.0) * ap_constant(model, w, p).value;
  std::ostringstream witness;
  witness << "eps=" << eps;
  return make_report(TheoremId::OPEN, lhs, rhs, witness.str());
}

VerificationReport check_weak_type(const GroupModel& model, const Weight& w, double q,
                                   const GroupFunction& f) {
  if (!(q >= 1)) throw std::invalid_argument("check_weak_type: requires q >= 1");
  bool any = false;
  for (double v : f.values()) any = any || v > 0;
  if (!any) throw std::invalid_argument("check_weak_type: f must not vanish identically");

  const GroupFunction mf = maximal(model, f);
  std::vector<std::pair<double, ElementId>> pts(static_cast<size_t>(model.size()));
  for (int x = 0; x < model.size(); ++x) pts[static_cast<size_t>(x)] = {mf(static_cast<ElementId>(x)), x};
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  // The level function lambda -> lambda^q w({Mf > lambda}) is maximized as
  // lambda approaches an attained value from below, where the set becomes the
  // non-strict one.
  double lhs = 0;
  std::string witness;
  double cum = 0;
  size_t i = 0;
  while (i < pts.size()) {
    const double v = pts[i].first;
    while (i < pts.size() && pts[i].first == v) {
      cum += w(pts[i].second) * model.mass(pts[i].second);
      ++i;
    }
    if (v <= 0) break;
    const double cand = std::pow(v, q) * cum;
    if (cand > lhs) {
      lhs = cand;
      std::ostringstream os;
      os << "level=" << v;
      witness = os.str();
    }
  }

  double fq_norm = 0;
  for (int x = 0; x < model.size(); ++x)
    fq_norm += std::pow(f(static_cast<ElementId>(x)), q) * w(static_cast<ElementId>(x)) *
               model.mass(static_cast<ElementId>(x));
  const double rhs =
      std::pow(model.doubling_constant(), 2.0 * q) * ap_constant(model, w, q).value * fq_norm;
  return make_report(TheoremId::WEAK, lhs, rhs, witness);
}

OpNormEstimate estimate_operator_norm(const GroupModel& model, const Weight& w, double p,
                                      const OpNormTestSpec& spec) {
  if (!(p > 1)) throw std::invalid_argument("estimate_operator_norm: requires p > 1");

  const auto lp_norm = [&](const GroupFunction& g) {
    double s = 0;
    for (int x = 0; x < model.size(); ++x)
      s += std::pow(g(static_cast<ElementId>(x)), p) * w(static_cast<ElementId>(x)) *
           model.mass(static_cast<ElementId>(x));
    return std::pow(s, 1.0 / p);
  };

  OpNormEstimate est;
  const auto consider = [&](const GroupFunction& f, const std::string& label) {
    const double nf = lp_norm(f);
    if (nf <= 0) return;
    const double ratio = lp_norm(maximal(model, f)) / nf;
    if (ratio > est.value) {
      est.value = ratio;
      est.witness = label;
    }
  };

  const Weight sigma = dual_weight(model, w, p);
  for (const BaseSetKey& key : model.distinct_base_sets()) {
    std::vector<double> v(static_cast<size_t>(model.size()), 0.0);
    for (ElementId x : model.base_set(key.center, key.index).points)
      v[static_cast<size_t>(x)] = sigma(x);
    consider(GroupFunction(model, std::move(v)), "f=sigma_chi" + key_str(key));
  }
  est.after_sigma = est.value;

  for (const BaseSetKey& key : model.distinct_base_sets()) {
    std::vector<double> v(static_cast<size_t>(model.size()), 0.0);
    for (ElementId x : model.base_set(key.center, key.index).points) v[static_cast<size_t>(x)] = 1.0;
    consider(GroupFunction(model, std::move(v)), "f=chi" + key_str(key));
  }
  est.after_chi = est.value;

  for (int k = 0; k < spec.n_random; ++k) {
    std::ostringstream os;
    os << "f=random{" << k << "}";
    consider(random_function(model, spec.seed + static_cast<std::uint64_t>(k)), os.str());
  }
  return est;
}

BuckleyReport check_buckley(const GroupModel& model, const Weight& w, double p,
                            const OpNormTestSpec& spec) {
  if (!(p > 1)) throw std::invalid_argument("check_buckley: requires p > 1");
  const double d = model.doubling_constant();
  const OpNormEstimate est = estimate_operator_norm(model, w, p, spec);
  const double apv = ap_constant(model, w, p).value;
  const double fw_sigma = ainfty_fw(model, dual_weight(model, w, p)).value;
  const double c = buckley_explicit_constant(p, d);

  BuckleyReport rep;
  rep.rhs2 = c * std::pow(apv, 1.0 / (p - 1.0));
  const double rhs1 = c * std::pow(apv * fw_sigma, 1.0 / p);
  rep.mixed_pass = est.value <= rhs1 * (1.0 + kVerifyRelTol);
  rep.fold_pass = rhs1 <= rep.rhs2 * (1.0 + kVerifyRelTol);

  std::ostringstream witness;
  witness << est.witness << ";rhs2=" << rep.rhs2 << ";fold=" << (rep.fold_pass ? "ok" : "FAIL");
  rep.report = make_report(TheoremId::BUCKLEY, est.value, rhs1, witness.str());
  rep.report.pass = rep.mixed_pass && rep.fold_pass;
  return rep;
}

VerificationReport check_a1(const GroupModel& model, const Weight& w) {
  const GroupFunction mw = maximal(model, GroupFunction(model, w.values()));
  double lhs = 0;
  ElementId arg = 0;
  for (int x = 0; x < model.size(); ++x) {
    const double r = mw(static_cast<ElementId>(x)) / w(static_cast<ElementId>(x));
    if (r > lhs) {
      lhs = r;
      arg = static_cast<ElementId>(x);
    }
  }
  const double rhs = ap_constant(model, w, 1.0).value;
  std::ostringstream witness;
  witness << "x=" << arg;
  return make_report(TheoremId::A1, lhs, rhs, witness.str(), /*two_sided=*/true);
}

VerificationReport check_duality(const GroupModel& model, const Weight& w, double p) {
  if (!(p > 1)) throw std::invalid_argument("check_duality: requires p > 1");
  const double pprime = p / (p - 1.0);
  const Weight sigma = dual_weight(model, w, p);
  const double lhs = ap_constant(model, sigma, pprime).value;
  const double rhs = std::pow(ap_constant(model, w, p).value, pprime - 1.0);
  std::ostringstream witness;
  witness << "pprime=" << pprime;
  return make_report(TheoremId::DUALITY, lhs, rhs, witness.str(), /*two_sided=*/true);
}

}  // namespace lab
