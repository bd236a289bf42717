#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csdiv/certify.hpp"
#include "csdiv/dist.hpp"
#include "csdiv/divergence.hpp"
#include "csdiv/generator.hpp"

namespace csdiv {

/// P = (p, 1-p), Q = (p + v/2, 1 - p - v/2); V(P,Q) = v exactly.
std::pair<Distribution, Distribution> binary_pair(double p, double v);

/// Polynomial extrapolation of y(x) to x = 0 assuming an error series with
/// the given exponents (Richardson / Neville eliminations applied in order).
/// xs must be strictly decreasing toward 0.
double extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys,
                           std::span<const int> orders);

struct TightnessSweep {
    std::vector<double> v;
    std::vector<double> ratio;
    double extrapolated = 0.0;
    double target = 0.0;  // the best-possible constant the limit should hit
};

/// D_f(P, Q_v)/v^2 at fixed p and its v->0 limit (Richardson over v^2, v^4 at
/// p = 1/2 where the error series is even; orders v, v^2 otherwise).
/// The limit is c2/[4 p (1-p)].
TightnessSweep tightness_sweep_second(const Generator& f, std::span<const double> v_list,
                                      double p = 0.5);

/// (D_f(P,Q_v) - c2 v^2)/v^4 along p = 1/2 + f'''(1)/(6 f''(1)) v; the limit
/// is c4.  Requires c4 > 0.
TightnessSweep tightness_sweep_fourth(const Generator& f, std::span<const double> v_list);

struct EnvelopePoint {
    double v = 0.0;
    ExtReal min_divergence;
    double argmin_p = 0.0;
    double bound_value = 0.0;  // c2 v^2 + c4 v^4 (c4 taken as 0 when undefined)
};

struct EnvelopeSearchSpec {
    int coarse_points = 512;
    double tol = 1e-10;
};

/// Minimum of D_f over binary pairs at fixed total variation v: coarse grid
/// over p then golden-section refinement.  This is an upper bound on the
/// infimum over arbitrary spaces (binary restriction).
EnvelopePoint lower_envelope(const Generator& f, double v, const EnvelopeSearchSpec& spec = {});

struct TopsoeRow {
    double v = 0.0;
    double envelope = 0.0;
    double bound = 0.0;  // v^2/2 + v^4/36 + v^6/270 + (221/340200) v^8
    double margin = 0.0;
};

/// Binary information-divergence envelope against the four-term literature
/// lower bound; margins must stay >= -1e-9.
std::vector<TopsoeRow> compare_topsoe_bound(std::span<const double> v_grid);

/// Checks I_alpha >= (alpha/2) V^2 + (alpha/36)(1+5 alpha-5 alpha^2) V^4 on
/// random binary pairs (alpha in (0,1)).
CertificateResult renyi_fourth_check(double alpha, int pairs, std::uint64_t seed);

struct RenyiWitness {
    double p = 0.0;
    double v = 0.0;
    double renyi_value = 0.0;
    double second_order_bound = 0.0;  // (alpha/2) v^2
};

struct RenyiViolationResult {
    std::optional<RenyiWitness> witness;
    CertStatus status = CertStatus::inconclusive;  // violated when a witness is found
};

/// Searches binary pairs for I_alpha < (alpha/2) V^2 (alpha > 1).  Expected
/// to find a witness for alpha > 1/2 + (3/10) sqrt(5) ~ 1.1708; reports
/// inconclusive when nothing is found (the question is open below that).
RenyiViolationResult renyi_violation_search(double alpha);

/// c_f(P) = (f''(1)/2) / (4 sup_A P(A)[1-P(A)]); +inf for point masses.
double per_P_constant(const Generator& f, const Distribution& p);

struct Log6ScanReport {
    std::string label = "CONJECTURE-EXPLORATION";
    double min_margin = 0.0;
    std::optional<double> witness_u;
    bool violation_found = false;
};

/// Grid scan of the conjectured pointwise sixth-order inequality for
/// u - 1 - log u (coefficient 41/12150, weight 23186/38745).  Supports but
/// never proves the conjecture.
Log6ScanReport conjecture_log6_scan(const GridSpec& grid = {});

struct SurplusFitReport {
    std::string label = "CONJECTURE-EXPLORATION";
    std::vector<double> v;
    std::vector<double> coeff;     // (inf S - v^2/2 - v^4/36)/v^6 per v
    double fitted = 0.0;           // extrapolated v^6 coefficient
    double target = 0.0;           // 2/6075
    double rel_error = 0.0;
};

/// Numerically estimates the v^6 coefficient of the binary infimum of the
/// two-term mixture-bound surplus and compares it to 1/270 - 41/12150.
SurplusFitReport conjecture_surplus_fit(std::span<const double> v_list);

}  // namespace csdiv
