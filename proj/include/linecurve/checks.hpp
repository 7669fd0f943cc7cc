#ifndef LINECURVE_CHECKS_HPP
#define LINECURVE_CHECKS_HPP

#include <map>
#include <string>
#include <vector>

#include "linecurve/surface.hpp"
#include "linecurve/trace.hpp"

// Machine-checked residuals of the curvature relations along a traced
// intersection curve, the classical curvature-line corollaries, and the
// parity verdict comparing the windings of the two principal foliations.

namespace linecurve::checks {

using trace::TracedIntersection;

/// Signed per-sample defect of the closing relation
/// (lambda1-mu1) sin(Phi1) - (lambda2-mu2) sin(Phi2), with Phi_i the doubled
/// angle 2 A_i + arg(sigma_i). Requires a constant-angle curve.
struct DefectSequence {
  std::vector<double> values;
  double max_abs = 0.0;
};
DefectSequence defect_final(const TracedIntersection& curve);

/// Pointwise value of the closing-relation defect (no constant-angle gate);
/// what defect_final aggregates and what the curve CSV reports per sample.
double defect_final_sample(const trace::IntersectionSample& smp);

/// Pointwise |residual| of the shear relation in its A2 form.
double sigma_kappa_sample(const trace::IntersectionSample& smp);

/// The shear relation in its two printed forms: the chart-dressed form in
/// (xi1, A1, eps) and the A2 form; the two must agree to roundoff.
struct SigmaKappaResult {
  std::vector<double> dressed;  // |residual| of the chart-dressed form
  std::vector<double> a2form;   // |residual| of the A2 form
  double max_dressed = 0.0;
  double max_a2form = 0.0;
  double mutual_gap = 0.0;  // max difference between the two forms
};
SigmaKappaResult sigma_kappa_relation(const TracedIntersection& curve);

/// Residuals of the chain-rule derivative identities of eta and r along the
/// curve for both surfaces, and of the differentiated closing relation on
/// constant-angle curves. Keys: deta_1, dr_1, deta_2, dr_2, and las2 when
/// the constant-angle gate holds.
std::map<std::string, double> derivative_identity_checks(
    const surface::SupportSurface& s1, const surface::SupportSurface& s2,
    const TracedIntersection& curve);

/// Residuals of the two displayed derivation steps under the unit
/// parameterization with branch angle pi/2: key xi2dot for the chart-velocity
/// equation of the second surface, key long_relation for the eliminated form.
/// beta_offset shifts the branch angle (sensitivity control).
std::map<std::string, double> derivation_step_checks(
    const TracedIntersection& curve, double beta_offset = 0.0);

/// | d(alpha)/ds - (tau_g1 - tau_g2) | per sample; the sign of the torsion
/// difference is frozen by fixture calibration. Samples must already carry
/// the Darboux torsions (run trace::torsion_profiles first).
DefectSequence angle_derivative_check(const TracedIntersection& curve);

enum class LineVerdict { Yes, No, NotApplicable };

/// Curvature-line predicate per surface plus the iff consistency check.
/// Samples must carry phi values where a surface is non-umbilic.
struct JoachimsthalVerdict {
  LineVerdict s1 = LineVerdict::NotApplicable;
  LineVerdict s2 = LineVerdict::NotApplicable;
  bool iff_violated = false;  // both applicable and verdicts differ
  double max_line_defect1 = 0.0, max_line_defect2 = 0.0;
};
JoachimsthalVerdict classical_joachimsthal(const TracedIntersection& curve);

enum class ParityVerdict {
  ConsistentBothOrientable,
  ConsistentBothNonOrientable,
  Violation,
  NotApplicable,
};
const char* parity_verdict_name(ParityVerdict v);

/// Pure parity rule on the windings, applied when the hypotheses hold.
ParityVerdict parity_rule(bool constant_angle, bool umbilic_free, int n, int m);

struct VerificationReport {
  bool constant_angle = false;
  double angle_deviation = 0.0;
  bool umbilic_free1 = false, umbilic_free2 = false;
  std::map<std::string, double> residuals;
  int n = 0, m = 0;
  ParityVerdict parity_verdict = ParityVerdict::NotApplicable;
  std::string not_applicable_reason;
  double defect_final_max = 0.0;
  double torsion_gap_max = 0.0;
};

/// Runs every applicable profile and check on the curve (filling its per
/// sample fields) and assembles the verdict.
VerificationReport main_theorem_verdict(const surface::SupportSurface& s1,
                                        const surface::SupportSurface& s2,
                                        TracedIntersection& curve);

}  // namespace linecurve::checks

#endif
