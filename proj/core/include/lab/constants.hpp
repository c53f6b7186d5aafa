#pragma once

#include "lab/group.hpp"
#include "lab/maximal.hpp"
#include "lab/weight.hpp"

namespace lab {

struct ConstantValue {
  double value = 0;
  BaseSetKey witness;  // argmax base set, smallest (index, center) among ties
};

/// Muckenhoupt constant. p > 1: max over distinct base sets U of
/// (avg_U w) (avg_U w^(1-p'))^(p-1). p = 1: max over U of
/// (avg_U w) * max_{x in U} 1/w(x).
ConstantValue ap_constant(const GroupModel& model, const Weight& w, double p);

/// Exponential A-infinity constant: max over U of
/// (avg_U w) * exp(avg_U log(1/w)).
ConstantValue ainfty_exp(const GroupModel& model, const Weight& w);

/// Fujii-Wilson constant: max over U of (1/w(U)) * integral over U of
/// M(w chi_U), with M the global maximal operator.
ConstantValue ainfty_fw(const GroupModel& model, const Weight& w);

/// Reverse Holder exponent r = 1 + 1/(4 D^10 fw - 1).
double rhi_exponent(double doubling, double fw);

/// Open-property epsilon = (p-1)/(4 D^10 fw_sigma); always < p-1.
double open_epsilon(double p, double doubling, double fw_sigma);

/// Structural constant of the maximal-function norm bound assembled from the
/// proof chain: C(p, D) = ((p/(p-1)) * 2^(2p+1) * D^(6p+8))^(1/p).
double buckley_explicit_constant(double p, double doubling);

}  // namespace lab
