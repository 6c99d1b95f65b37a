#include "bhc/bhc_integral.hpp"

#include <array>
#include <cmath>
#include <functional>

#include "bhc/errors.hpp"

namespace bhc {

namespace {

constexpr int kOrder = 32;
constexpr int kMaxDepth = 40;

struct GaussLegendre {
    std::array<long double, kOrder> node{};
    std::array<long double, kOrder> weight{};
};

// Roots of P_32 by Newton iteration from the Chebyshev guesses.
const GaussLegendre& gauss_legendre() {
    static const GaussLegendre gl = [] {
        GaussLegendre g;
        const long double pi = 3.14159265358979323846264338327950288L;
        for (int i = 0; i < kOrder; ++i) {
            long double x = std::cos(pi * (i + 0.75L) / (kOrder + 0.5L));
            long double dp = 0;
            for (int it = 0; it < 100; ++it) {
                long double p0 = 1, p1 = x;
                for (int n = 2; n <= kOrder; ++n) {
                    long double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kOrder * (x * p1 - p0) / (x * x - 1);
                long double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-19L) break;
            }
            g.node[i] = x;
            g.weight[i] = 2 / ((1 - x * x) * dp * dp);
        }
        return g;
    }();
    return gl;
}

template <class T>
T gl_panel(const std::function<T(T)>& f, T lo, T hi) {
    const auto& gl = gauss_legendre();
    const T half = (hi - lo) / 2, mid = (hi + lo) / 2;
    T s = 0;
    for (int i = 0; i < kOrder; ++i) s += static_cast<T>(gl.weight[i]) * f(mid + half * static_cast<T>(gl.node[i]));
    return s * half;
}

template <class T>
T adapt(const std::function<T(T)>& f, T lo, T hi, T whole, T tol, int depth) {
    const T mid = lo + (hi - lo) / 2;
    const T left = gl_panel(f, lo, mid), right = gl_panel(f, mid, hi);
    const T both = left + right;
    if (depth >= kMaxDepth || std::fabs(both - whole) <= tol * std::fabs(both)) return both;
    return adapt(f, lo, mid, left, tol, depth + 1) + adapt(f, mid, hi, right, tol, depth + 1);
}

// Geometric panels [lo, 2lo], [2lo, 4lo], ... summed in order.
template <class T>
T integrate(const std::function<T(T)>& f, T lo, T hi, T tol) {
    if (!(hi > lo)) return 0;
    T sum = 0;
    T a = lo;
    while (a < hi) {
        T b = std::min<T>(hi, a * 2);
        if (hi - b < b * static_cast<T>(1e-3)) b = hi;
        sum += adapt(f, a, b, gl_panel(f, a, b), tol, 0);
        a = b;
    }
    return sum;
}

template <class T>
class LogMember {
public:
    explicit LogMember(const IntPolynomial& f) : d_(static_cast<int>(f.degree())) {
        const long double lead = static_cast<long double>(f.leading().get_d());
        ln_lead_ = std::log(static_cast<T>(lead));
        for (int j = 0; j <= d_; ++j) {
            long double c = static_cast<long double>(f.coeff(static_cast<std::size_t>(j)).get_d());
            coeffs_.push_back(static_cast<T>(c));
            if (j < d_) ratios_.push_back(static_cast<T>(c / lead));
        }
    }

    T operator()(T t) const {
        if (t < static_cast<T>(1e8)) {
            T v = 0;
            for (int j = d_; j >= 0; --j) v = v * t + coeffs_[j];
            if (!(v > 1)) throw DomainError("integrand singular: a member is <= 1 inside the range");
            return std::log(v);
        }
        // ln f = d ln t + ln lead + log1p(sum_{j<d} (c_j/lead) t^(j-d))
        const T u = 1 / t;
        T s = 0;
        for (int j = 0; j < d_; ++j) s = (s + ratios_[j]) * u;
        return d_ * std::log(t) + ln_lead_ + std::log1p(s);
    }

private:
    int d_;
    T ln_lead_;
    std::vector<T> coeffs_;
    std::vector<T> ratios_;
};

template <class T>
T family_integral(const PolyFamily& family, T lo, T hi, T tol) {
    std::vector<LogMember<T>> logs;
    for (const auto& f : family.members()) logs.emplace_back(f);
    std::function<T(T)> g = [&logs](T t) {
        T prod = 1;
        for (const auto& l : logs) prod *= l(t);
        return 1 / prod;
    };
    return integrate(g, lo, hi, tol);
}

void check_tol(double tol) {
    if (!(tol > 0) || tol >= 1) throw DomainError("tolerance must lie in (0, 1)");
}

} // namespace

double li(double x, double tol) {
    if (!(x >= 2)) throw DomainError("li(x) requires x >= 2");
    check_tol(tol);
    if (tol < 1e-13) {
        std::function<long double(long double)> f = [](long double t) { return 1 / std::log(t); };
        return static_cast<double>(integrate<long double>(f, 2, x, tol));
    }
    std::function<double(double)> f = [](double t) { return 1 / std::log(t); };
    return integrate<double>(f, 2, x, tol);
}

double log_power_integral(unsigned k, double x, double tol) {
    if (!(x >= 2)) throw DomainError("integral requires x >= 2");
    if (k == 0) return x - 2;
    check_tol(tol);
    std::function<long double(long double)> f = [k](long double t) { return 1 / std::pow(std::log(t), static_cast<long double>(k)); };
    return static_cast<double>(integrate<long double>(f, 2, x, tol));
}

std::uint64_t lower_limit(const PolyFamily& family) {
    for (std::uint64_t t = 2;; ++t) {
        const BigInt bt = big_from_u64(t);
        bool ok = true;
        for (const auto& f : family.members())
            if (f(bt) < 2) {
                ok = false;
                break;
            }
        if (ok) return t;
        if (t > 1'000'000) throw DomainError("no lower limit below 10^6 for " + family.to_string());
    }
}

double integrate_family(const PolyFamily& family, double lo, double hi, double tol) {
    check_tol(tol);
    if (hi < lo) throw DomainError("integration range is reversed");
    if (tol < 1e-13) return static_cast<double>(family_integral<long double>(family, lo, hi, tol));
    return family_integral<double>(family, lo, hi, tol);
}

IntegralResult bhc_integral(const PolyFamily& family, double x, double tol) {
    require_admissible(family, true);
    IntegralResult r;
    r.a = lower_limit(family);
    if (x < static_cast<double>(r.a))
        throw DomainError("upper limit " + std::to_string(x) + " is below the lower limit " + std::to_string(r.a));
    r.integral = integrate_family(family, static_cast<double>(r.a), x, tol);
    return r;
}

namespace {

BhcEstimate assemble(double x, const IntegralResult& ir, const HLConstantResult& constant, double tol) {
    BhcEstimate e;
    e.x = x;
    e.a = ir.a;
    e.integral = ir.integral;
    e.constant = constant;
    e.value = constant.value * ir.integral;
    e.tolerance = tol;
    return e;
}

} // namespace

BhcEstimate bhc_estimate(const PolyFamily& family, double x, const HLConstantResult& constant, double tol) {
    return assemble(x, bhc_integral(family, x, tol), constant, tol);
}

BhcEstimate bhc_estimate(const PolyFamily& family, double x, std::uint64_t prime_bound, double tol,
                         const std::optional<OmegaOverride>& override_rule, const HLOptions& options) {
    IntegralResult ir = bhc_integral(family, x, tol); // cheap; validates before the product
    return assemble(x, ir, hl_constant(family, prime_bound, override_rule, options), tol);
}

double simplified_estimate(const PolyFamily& family, double x, double constant, double tol) {
    if (!(x > 2)) throw DomainError("simplified estimate requires x > 2");
    double degs = 1;
    for (const auto& f : family.members()) degs *= f.degree();
    return constant / degs * log_power_integral(static_cast<unsigned>(family.k()), x, tol);
}

double simplified_estimate(const PolyFamily& family, double x, std::uint64_t prime_bound,
                           const std::optional<OmegaOverride>& override_rule, const HLOptions& options) {
    if (!(x > 2)) throw DomainError("simplified estimate requires x > 2");
    return simplified_estimate(family, x, hl_constant(family, prime_bound, override_rule, options).value);
}

} // namespace bhc
