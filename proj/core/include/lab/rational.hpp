#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "lab/group.hpp"

namespace lab::rational {

using Rational = boost::multiprecision::cpp_rational;

/// Pointwise rational values on the group (a weight or test function).
using RationalValues = std::vector<Rational>;

/// Exact-arithmetic mirrors of the floating enumeration, valid on
/// counting-measure models (every point mass equals 1). They exist so that
/// floating results can be cross-checked against exact values; all of them
/// enumerate distinct base sets directly with no shared fast path.

bool counting_measure_required(const GroupModel& model);

Rational average(const GroupModel& model, const RationalValues& v, const ElementSet& set);
Rational mass(const GroupModel& model, const RationalValues& v, const ElementSet& set);

/// Mf(x) over all base sets, exact.
RationalValues maximal(const GroupModel& model, const RationalValues& f);

/// A_2 constant: max over U of (avg_U w)(avg_U 1/w). Exact because the dual
/// weight at p = 2 is the pointwise reciprocal.
Rational ap2_constant(const GroupModel& model, const RationalValues& w);

/// A_1 constant: max over U of (avg_U w) * max_{x in U} 1/w(x).
Rational a1_constant(const GroupModel& model, const RationalValues& w);

/// Fujii-Wilson constant, exact.
Rational ainfty_fw(const GroupModel& model, const RationalValues& w);

/// Rational -> double conversion and relative distance |a-b| / max(|b|, 1).
double to_double(const Rational& r);
double relative_error(double computed, const Rational& exact);

}  // namespace lab::rational
