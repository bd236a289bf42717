#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csdiv/generator.hpp"

namespace csdiv {

/// The standard certification grid: logarithmically spaced on [1e-6, 1e6]
/// with 20001 points, plus 64 extra points in [1-1e-3, 1+1e-3] and the point
/// u = 1 itself.  Tails decide violations for parameters outside [-1,2];
/// the refinement resolves behavior where every condition degenerates to 0/0.
struct GridSpec {
    double lo = 1e-6;
    double hi = 1e6;
    int points = 20001;
    bool log_spaced = true;
    bool refine_near_one = true;

    std::string describe() const;
};

std::vector<double> make_grid(const GridSpec& spec = {});

enum class CertStatus { certified_numeric, violated, inconclusive };

const char* to_string(CertStatus s);

/// Outcome of a numeric condition check.  Margins are normalized pointwise by
/// max(|LHS|, |RHS|, 1) before taking the minimum over the grid, so tail
/// points cannot mask near-1 violations.  "certified_numeric" means the grid
/// found no violation; it is never a proof.
struct CertificateResult {
    CertStatus status = CertStatus::inconclusive;
    double margin = 0.0;
    std::optional<double> witness_u;
    std::string grid_spec;
    bool numeric_grade = false;  // the generator's derivative oracle is finite-difference
};

/// Second-order sufficient condition:
///   f~(u) [1 + (1-w2)(u-1)] >= (f''(1)/2) (u-1)^2  for all u > 0.
CertificateResult check_second_order_condition(const Generator& f, const GridSpec& grid = {});

/// Derivative form of the second-order condition:
///   sgn(u-1) { (f'''/f'')(u) [1 + (1-w2)(u-1)] + 3 (1-w2) } >= 0.
CertificateResult check_second_order_derivative_condition(const Generator& f,
                                                          const GridSpec& grid = {});

/// Fourth-order sufficient condition (both weights and both constants):
///   f~ [1+(1-w2)(u-1)] [1+(1-w4)(u-1)]^3 >=
///   c2 (u-1)^2 [1+(1-w4)(u-1)]^3 + c4 (u-1)^4 [1+(1-w2)(u-1)].
/// Requires c2 > 0 and c4 > 0.
CertificateResult check_fourth_order_condition(const Generator& f, const GridSpec& grid = {});

/// Sixth-derivative form of the fourth-order condition.
CertificateResult check_fourth_order_derivative_condition(const Generator& f,
                                                          const GridSpec& grid = {});

struct WeightsAdmissible {
    bool admissible = false;
    std::string diagnostics;
};

/// The fourth-order condition forces both weights into [0,1]; this checks
/// that necessary constraint.  Requires c4 > 0 (w4 defined).
WeightsAdmissible check_weights_admissible(const PinskerCoefficients& c);

/// Scalar function with a derivative oracle, composable by sums and products
/// (Leibniz rule); expresses the g functions of the derivative-sign lemma.
class SmoothFn {
public:
    SmoothFn() = default;

    static SmoothFn polynomial(std::vector<double> coeffs);  // ascending degree
    static SmoothFn from_generator(const Generator& f);
    static SmoothFn generator_tilde(const Generator& f);
    static SmoothFn scaled(double c, const SmoothFn& f);

    double value(double u) const { return deriv(0, u); }
    double deriv(int order, double u) const;
    int max_order() const { return max_order_; }

    friend SmoothFn operator+(const SmoothFn& a, const SmoothFn& b);
    friend SmoothFn operator-(const SmoothFn& a, const SmoothFn& b);
    friend SmoothFn operator*(const SmoothFn& a, const SmoothFn& b);

private:
    std::function<double(int, double)> d_;
    int max_order_ = 0;
};

/// Checks g(1) = g'(1) = ... = g^(n)(1) = 0 (within 1e-9) and the sign
/// pattern of g^(n+1): for odd n, g^(n+1) >= 0 everywhere; for even n,
/// g^(n+1) <= 0 left of 1 and >= 0 right of 1.  Together these certify
/// g >= 0 numerically.
CertificateResult derivative_sign_check(const SmoothFn& g, int n, const GridSpec& grid = {});

/// Profile of h_w(u) = (u-1)^2 / { f~(u) [1 + (1-w)(u-1)] } with the
/// continuity value 2/f''(1) at u = 1.
struct HwProfile {
    double w = 0.0;
    std::vector<std::pair<double, double>> samples;  // (u, h_w(u))
    double limit_at_1 = 0.0;
    double argmax_u = 0.0;
    double max_value = 0.0;
};

HwProfile h_w_profile(const Generator& f, double w, const GridSpec& grid = {});

}  // namespace csdiv
