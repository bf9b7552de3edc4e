#pragma once

// Chi-square uniformity test for flip matrices, the regularized incomplete
// gamma function behind its p-value, and ordinary least squares.

#include <hfkr/bit_matrix.hpp>
#include <hfkr/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

namespace hfkr {

namespace detail {

inline constexpr int gamma_max_iterations = 100000;
inline constexpr double gamma_tolerance = 1e-16;

inline double gamma_prefactor(double a, double x) { return std::exp(-x + a * std::log(x) - std::lgamma(a)); }

// Series for P(a, x); converges quickly for x < a + 1.
inline double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < gamma_max_iterations; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * gamma_tolerance) break;
    }
    return sum * gamma_prefactor(a, x);
}

// Modified Lentz continued fraction for Q(a, x); used for x >= a + 1.
inline double gamma_q_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < gamma_max_iterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < gamma_tolerance) break;
    }
    return gamma_prefactor(a, x) * h;
}

inline void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw error("incomplete gamma needs a > 0 and x >= 0");
}

}  // namespace detail

/// Lower regularized incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
inline double regularized_gamma_p(double a, double x) {
    detail::check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return x < a + 1.0 ? detail::gamma_p_series(a, x) : 1.0 - detail::gamma_q_fraction(a, x);
}

/// Upper regularized incomplete gamma Q(a, x) = 1 - P(a, x).
inline double regularized_gamma_q(double a, double x) {
    detail::check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < a + 1.0 ? 1.0 - detail::gamma_p_series(a, x) : detail::gamma_q_fraction(a, x);
}

/// Survival function of the chi-square distribution with `dof` degrees of freedom.
inline double chi_square_sf(double statistic, double dof) { return regularized_gamma_q(0.5 * dof, 0.5 * statistic); }

enum class chi_square_mode {
    /// Expected count per column is the observed mean, dof = cols - 1.
    table_one,
    /// Each column is Binomial(rows, 1/2); statistic sums the flip and
    /// no-flip cells, dof = cols.
    bernoulli,
};

inline std::string_view to_string(chi_square_mode m) noexcept {
    return m == chi_square_mode::table_one ? "table1" : "bernoulli";
}

struct chi_square_result {
    chi_square_mode mode = chi_square_mode::table_one;
    double statistic = 0.0;
    std::int64_t dof = 0;
    double p_value = 1.0;
    std::vector<std::uint64_t> per_bit_flip_counts;
};

/// Goodness of fit of per-column flip counts to a uniform spread.
///
/// `rows` is the number of trials behind the counts; bernoulli mode needs it
/// for the expected count rows / 2.
inline chi_square_result chi_square_counts(std::vector<std::uint64_t> counts, std::uint64_t rows,
                                           chi_square_mode mode = chi_square_mode::table_one) {
    if (counts.size() < 2) throw degenerate_input("chi-square needs at least two columns");
    const auto total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (total == 0) throw degenerate_input("no flips recorded; chi-square is undefined");

    chi_square_result r;
    r.mode = mode;
    const auto cols = static_cast<double>(counts.size());
    if (mode == chi_square_mode::table_one) {
        const double expected = static_cast<double>(total) / cols;
        for (const auto f : counts) {
            const double dev = static_cast<double>(f) - expected;
            r.statistic += dev * dev / expected;
        }
        r.dof = static_cast<std::int64_t>(counts.size()) - 1;
    } else {
        if (rows == 0) throw degenerate_input("bernoulli mode needs the trial count");
        const double n = static_cast<double>(rows);
        const double expected = 0.5 * n;
        for (const auto f : counts) {
            const double dev = static_cast<double>(f) - expected;
            r.statistic += dev * dev / (0.25 * n);
        }
        r.dof = static_cast<std::int64_t>(counts.size());
    }
    r.p_value = chi_square_sf(r.statistic, static_cast<double>(r.dof));
    r.per_bit_flip_counts = std::move(counts);
    return r;
}

inline chi_square_result chi_square_uniform(const bit_matrix& m, chi_square_mode mode = chi_square_mode::table_one) {
    if (m.rows() == 0 || m.cols() == 0) throw degenerate_input("empty bit matrix");
    return chi_square_counts(m.column_sums(), m.rows(), mode);
}

/// Median; the mean of the two middle values for an even count.
inline double median(std::vector<double> values) {
    if (values.empty()) throw degenerate_input("median of an empty sample");
    std::sort(values.begin(), values.end());
    const auto mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

struct linear_fit_result {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

/// Ordinary least squares y = slope * x + intercept.
inline linear_fit_result linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw insufficient_data("xs and ys differ in length");
    if (xs.size() < 2) throw insufficient_data("need at least two points");
    const auto n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw insufficient_data("need at least two distinct x values");

    linear_fit_result fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

}  // namespace hfkr
