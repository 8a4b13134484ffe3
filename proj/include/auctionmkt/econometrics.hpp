#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The auctionmkt Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "auctionmkt/dataset.hpp"
#include "auctionmkt/market_model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace auctionmkt {
namespace econometrics {

/// Dense row-major design matrix.
class Matrix
{
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows)
    , cols_(cols)
    , data_(rows * cols, 0.0)
  {}

  std::size_t rows() const noexcept
  {
    return rows_;
  }
  std::size_t cols() const noexcept
  {
    return cols_;
  }

  double &operator()(std::size_t r, std::size_t c) noexcept
  {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const noexcept
  {
    return data_[r * cols_ + c];
  }

  std::span<double const> row(std::size_t r) const noexcept
  {
    return {data_.data() + r * cols_, cols_};
  }

private:
  std::size_t         rows_ = 0;
  std::size_t         cols_ = 0;
  std::vector<double> data_;
};

struct OlsFit
{
  std::vector<std::string> design_labels;
  std::vector<double>      coefficients;
  std::vector<double>      standard_errors;
  std::optional<double>    r_squared;  // only for fits with an intercept
  std::size_t              n_observations = 0;
  std::vector<double>      residuals;
  double                   rss    = 0.0;
  double                   sigma2 = 0.0;  // RSS / (n − k)
  /// 1-norm condition number of the cross-product matrix that was inverted
  /// (centred when an intercept is present).
  double condition_number = 1.0;

  bool ill_conditioned() const noexcept
  {
    return condition_number > 1e8;
  }

  /// Coefficient by label; throws std::out_of_range when absent.
  double coefficient(std::string const &label) const;
  double standard_error(std::string const &label) const;
};

/// Ordinary least squares via pivoted elimination on the normal equations.
/// With `include_intercept` a leading "constant" term is added and the
/// slopes are solved on centred columns. `labels` names the design columns.
/// Throws SolverError for a rank-deficient design (naming the offending
/// column) and ValidationError when n ≤ k.
OlsFit ols(Matrix const &design, std::span<double const> response, bool include_intercept,
           std::vector<std::string> labels = {});

/// Weekly regressor of the revenue equation: ln(U_E/L_E) − ln(U_Y/L_Y) over
/// the weeks complete for `metric`.
std::vector<double> revenue_regressor(Panel const &panel, UsageMetric metric);

/// No-intercept OLS of the constant −ln(1 − ᾱ) on the weekly regressor.
/// Single coefficient labelled "b".
OlsFit estimate_revenue_elasticity(Panel const &panel, double alpha_bar, UsageMetric metric);

/// Pooled OLS of ln U_j on ln L_j and ln L_{-j} with a common constant, over
/// all (week, site) rows of the complete weeks. Coefficients are ordered
/// (constant, own listings, rival's listings).
OlsFit estimate_usage_equation(Panel const &panel, UsageMetric metric);

inline constexpr char const *kConstant = "constant";
inline constexpr char const *kOwn      = "own listings";
inline constexpr char const *kRival    = "rival's listings";

/// (β1, β2, c) from a usage-equation fit; η left at zero.
UsageParams usage_params_from_fit(OlsFit const &fit);

/// term,estimate,std_error
std::string fit_csv(OlsFit const &fit);

}  // namespace econometrics
}  // namespace auctionmkt
