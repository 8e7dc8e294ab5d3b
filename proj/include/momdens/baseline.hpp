#pragma once

#include "momdens/models.hpp"

#include <cstddef>
#include <string>

namespace momdens {

struct KernelSpec
{
  std::string kernel = "standard-normal";
  double bandwidth = 1.0;

  void validate() const;
};

//! h = n^{-beta}; beta must lie in (0, 1/4).
double bandwidth_from_exponent(std::size_t n, double beta);

//! Weighted Gaussian-kernel estimator for length-biased data:
//! (weight / (n h)) sum (1 / Y_i) K((x - Y_i) / h).
double jones_density(const Sample& sample,
                     const WeightedModel& model,
                     double weight,
                     const KernelSpec& spec,
                     double x);

//! Kernel survival estimator for the excess-life model, S_h = W g_h with g_h
//! the plain kernel density of the sample.
double jones_survival(const Sample& sample,
                      const WeightedModel& model,
                      double weight,
                      const KernelSpec& spec,
                      double x);

} // namespace momdens
