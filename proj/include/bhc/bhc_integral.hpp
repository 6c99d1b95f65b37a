#pragma once

#include <cstdint>
#include <optional>

#include "bhc/hl_constant.hpp"
#include "bhc/poly.hpp"

namespace bhc {

inline constexpr double kDefaultIntegralTol = 1e-10;

/// Integral of dt / ln t over [2, x]. Throws DomainError for x < 2.
double li(double x, double tol = 1e-13);

/// Smallest integer t >= 2 with f_i(t) >= 2 for every member.
std::uint64_t lower_limit(const PolyFamily& family);

/// Integral of dt / prod ln f_i(t) over [lo, hi], every f_i > 1 on the range.
/// Panels grow geometrically (ratio 2); each is refined by 32-point
/// Gauss-Legendre bisection until the relative change is below tol. Extended
/// precision is used for tol < 1e-13.
double integrate_family(const PolyFamily& family, double lo, double hi, double tol = kDefaultIntegralTol);

struct IntegralResult {
    std::uint64_t a = 2;
    double integral = 0.0;
};

/// Integral from the lower limit a to x. x == a gives 0; x < a throws.
IntegralResult bhc_integral(const PolyFamily& family, double x, double tol = kDefaultIntegralTol);

struct BhcEstimate {
    double x = 0.0;
    std::uint64_t a = 2;
    double integral = 0.0;
    HLConstantResult constant;
    double value = 0.0;
    double tolerance = kDefaultIntegralTol;
};

BhcEstimate bhc_estimate(const PolyFamily& family, double x, std::uint64_t prime_bound,
                         double tol = kDefaultIntegralTol,
                         const std::optional<OmegaOverride>& override_rule = std::nullopt,
                         const HLOptions& options = {});
/// Reuses an already computed constant.
BhcEstimate bhc_estimate(const PolyFamily& family, double x, const HLConstantResult& constant,
                         double tol = kDefaultIntegralTol);

/// Integral of dt / (ln t)^k over [2, x].
double log_power_integral(unsigned k, double x, double tol = kDefaultIntegralTol);

/// C / (prod deg f_i) * integral of dt / (ln t)^k over [2, x].
double simplified_estimate(const PolyFamily& family, double x, double constant, double tol = kDefaultIntegralTol);
double simplified_estimate(const PolyFamily& family, double x, std::uint64_t prime_bound,
                           const std::optional<OmegaOverride>& override_rule = std::nullopt,
                           const HLOptions& options = {});

} // namespace bhc
