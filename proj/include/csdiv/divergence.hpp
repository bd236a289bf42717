#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csdiv/dist.hpp"
#include "csdiv/ext_real.hpp"
#include "csdiv/generator.hpp"

namespace csdiv {

/// D_f(P,Q) = sum_i p_i f(q_i/p_i) with the zero-mass conventions:
/// p=q=0 contributes 0; p=0,q>0 contributes q * lim f(u)/u; p>0,q=0
/// contributes p * f(0+).
ExtReal f_divergence(const Generator& f, const Distribution& p, const Distribution& q);

/// Renyi information gain of order alpha > 0, alpha != 1:
/// (alpha-1)^{-1} log sum p^alpha q^{1-alpha}.
ExtReal renyi(double alpha, const Distribution& p, const Distribution& q);

// Named shortcuts.
ExtReal kl(const Distribution& p, const Distribution& q);
ExtReal chi2(const Distribution& p, const Distribution& q);
ExtReal hellinger2(const Distribution& p, const Distribution& q);
ExtReal triangular(const Distribution& p, const Distribution& q);
ExtReal jeffreys(const Distribution& p, const Distribution& q);
/// C(P,Q) = D(P,M) + D(Q,M) with M the even mixture.
ExtReal capacitory(const Distribution& p, const Distribution& q);

/// Weight functions k(u) >= 0 for the Holder-type bounds.  The lemma requires
/// sum_i p_i k(q_i/p_i) = 1, which all of these satisfy.
using WeightFn = std::function<double(double)>;

WeightFn unit_weight();                  // k = 1
WeightFn mixture_weight(double w);       // k(u) = 1 + (1-w)(u-1), the w p + (1-w) q mixture
WeightFn half_one_plus_u_weight();       // k(u) = (1+u)/2, the even mixture
/// k(u) = (sqrt(u)+1)^2 / (2 (2 - h^2(P,Q))); pair-dependent.
WeightFn kraft_weight(const Distribution& p, const Distribution& q);

/// Both sides of the expectation bound
///   |E_Q g - E_P g|^n <= sup_u {(u-1)^n / (f~(u) k(u)^{n-1})}
///                        * [E_r |g-a|^{n/(n-1)}]^{n-1} * D_f(P,Q),
/// with r = p k(q/p).  The sup is evaluated on the supplied u-grid
/// intersected with the realized ratio range plus 64 refinement points near
/// u = 1 (a grid approximation of the analytic supremum, flagged in notes).
struct HolderBoundReport {
    double lhs = 0.0;
    double sup_factor = 0.0;
    double moment_factor = 0.0;
    ExtReal divergence;
    ExtReal rhs;
    bool holds = false;
    std::string notes;
};

/// a defaults to E_r g when not supplied.
HolderBoundReport holder_bound(const Generator& f, const WeightFn& k, double n,
                               std::span<const double> g, std::optional<double> a,
                               const Distribution& p, const Distribution& q,
                               std::span<const double> u_grid);

/// The g = indicator{p >= q}, a = 1/2 specialization: lhs becomes (V/2)^n and
/// the report verifies the V^n <= sup * D_f family of bounds.
HolderBoundReport v_power_bound(const Generator& f, const WeightFn& k, double n,
                                const Distribution& p, const Distribution& q,
                                std::span<const double> u_grid);

}  // namespace csdiv
