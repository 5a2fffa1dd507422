#include "ph/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace ph {

namespace {

// Regularized lower incomplete gamma P(a,x) by series expansion (x < a+1).
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a,x) by continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

} // namespace

double chi_square_p_value(double stat, unsigned df) {
    if (df == 0) throw std::invalid_argument("chi_square_p_value: zero df");
    if (stat <= 0.0) return 1.0;
    return gamma_q(df / 2.0, stat / 2.0);
}

ChiSquareResult chi_square_uniform(const std::vector<std::size_t>& counts) {
    if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform: need >= 2 cells");
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    if (total == 0) throw std::invalid_argument("chi_square_uniform: empty sample");

    double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::size_t c : counts) {
        double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    unsigned df = static_cast<unsigned>(counts.size() - 1);
    return {stat, df, chi_square_p_value(stat, df)};
}

ChiSquareResult chi_square_two_sample(const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("chi_square_two_sample: size mismatch");
    }
    double na = 0, nb = 0;
    for (std::size_t c : a) na += static_cast<double>(c);
    for (std::size_t c : b) nb += static_cast<double>(c);
    if (na == 0 || nb == 0) throw std::invalid_argument("chi_square_two_sample: empty sample");

    double total = na + nb;
    double stat = 0.0;
    unsigned used = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double col = static_cast<double>(a[i]) + static_cast<double>(b[i]);
        if (col == 0) continue;
        ++used;
        double ea = na * col / total;
        double eb = nb * col / total;
        double da = static_cast<double>(a[i]) - ea;
        double db = static_cast<double>(b[i]) - eb;
        stat += da * da / ea + db * db / eb;
    }
    if (used < 2) throw std::invalid_argument("chi_square_two_sample: degenerate table");
    unsigned df = used - 1;
    return {stat, df, chi_square_p_value(stat, df)};
}

double binomial_sigma_bound(std::size_t trials, double sigmas) {
    if (trials == 0) throw std::invalid_argument("binomial_sigma_bound: zero trials");
    return sigmas * std::sqrt(0.25 / static_cast<double>(trials));
}

bool within_binomial_sigma(std::size_t count, std::size_t n, double p, double sigmas) {
    double mean = static_cast<double>(n) * p;
    double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    return std::fabs(static_cast<double>(count) - mean) <= sigmas * sd;
}

} // namespace ph
