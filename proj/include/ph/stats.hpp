#pragma once

#include <cstddef>
#include <vector>

namespace ph {

/// Upper-tail p-value of the chi-square distribution with df degrees of
/// freedom, via the regularized incomplete gamma function.
double chi_square_p_value(double stat, unsigned df);

struct ChiSquareResult {
    double stat = 0.0;
    unsigned df = 0;
    double p_value = 1.0;
};

/// Goodness of fit against the uniform distribution over the given cells.
ChiSquareResult chi_square_uniform(const std::vector<std::size_t>& counts);

/// Two-sample homogeneity test (2 x C contingency table). Cells empty in
/// both samples are dropped.
ChiSquareResult chi_square_two_sample(const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b);

/// Half-width of the k-sigma band around 1/2 for a fair-coin success rate.
double binomial_sigma_bound(std::size_t trials, double sigmas);

/// |count - n*p| <= sigmas * sqrt(n*p*(1-p)).
bool within_binomial_sigma(std::size_t count, std::size_t n, double p, double sigmas);

} // namespace ph
