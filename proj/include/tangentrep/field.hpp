#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tangentrep/expr.hpp"
#include "tangentrep/geometry.hpp"

namespace tangentrep {

struct ValueGradient {
  double value;
  std::vector<double> gradient;
};

/// A real-valued function of dim variables together with its gradient.
/// Immutable and cheap to copy; evaluation is pure.
class ScalarField {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradientFn = std::function<ValueGradient(std::span<const double>)>;

  ScalarField(std::string name, int dim, ValueFn value, GradientFn value_gradient,
              std::string smoothness_note = "C1 claimed");

  /// Gradient by forward-mode dual numbers, one pass per coordinate.
  static ScalarField from_expression(const FieldExpr& expr, std::string name = {});

  const std::string& name() const { return impl_->name; }
  int dim() const { return impl_->dim; }
  const std::string& smoothness_note() const { return impl_->note; }

  double value(std::span<const double> x) const;
  ValueGradient eval_with_gradient(std::span<const double> x) const;

 private:
  struct Impl {
    std::string name;
    int dim;
    ValueFn value;
    GradientFn value_gradient;
    std::string note;
  };
  std::shared_ptr<const Impl> impl_;
};

enum class Curvature { strictly_convex, strictly_concave, affine, indefinite };

struct CatalogEntry {
  ScalarField field;
  /// Domain the field is exercised on. Non-convex only for the counterexample.
  Domain domain;
  Curvature curvature;
};

/// Names accepted by catalog(), in a fixed order.
std::span<const std::string_view> catalog_names();

/// Throws Error for unknown names.
ScalarField catalog(std::string_view name);
CatalogEntry catalog_entry(std::string_view name);

}  // namespace tangentrep
