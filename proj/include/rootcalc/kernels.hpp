#pragma once

#include "rootcalc/poly.hpp"

#include <vector>

/*
 * Dense coefficient convolution, the hot loop under every series product.
 * Inputs are coefficient arrays starting at exponents la and lb; the output
 * holds exponents la+lb .. D-1.
 */
namespace rootcalc::kernels {

std::vector<GradedPoly> convolve_parallel(const std::vector<GradedPoly>& a, int la,
                                          const std::vector<GradedPoly>& b, int lb, int D);

// reference implementation kept for testing the parallel one
std::vector<GradedPoly> convolve_serial(const std::vector<GradedPoly>& a, int la,
                                        const std::vector<GradedPoly>& b, int lb, int D);

// polynomial product split over the terms of the left factor
GradedPoly poly_mul_parallel(const GradedPoly& a, const GradedPoly& b);

int max_threads();

}  // namespace rootcalc::kernels
