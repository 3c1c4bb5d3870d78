#include "tangentrep/field.hpp"

#include "tangentrep/errors.hpp"

namespace tangentrep {

ScalarField::ScalarField(std::string name, int dim, ValueFn value, GradientFn value_gradient,
                         std::string smoothness_note)
    : impl_(std::make_shared<const Impl>(
          Impl{std::move(name), dim, std::move(value), std::move(value_gradient), std::move(smoothness_note)})) {
  if (dim < 1) throw Error("field dimension must be positive");
}

ScalarField ScalarField::from_expression(const FieldExpr& expr, std::string name) {
  if (name.empty()) name = expr.to_string();
  auto value = [expr](std::span<const double> x) { return expr.eval(x); };
  auto grad = [expr](std::span<const double> x) {
    // The value comes from the plain pass: the dual pass may use sincos and
    // differ in the last bit, and value() must match it exactly.
    ValueGradient out{expr.eval(x), std::vector<double>(expr.dim())};
    for (int i = 0; i < expr.dim(); ++i) out.gradient[i] = expr.eval_dual(x, i).d;
    return out;
  };
  return ScalarField(std::move(name), expr.dim(), std::move(value), std::move(grad), "smooth where defined");
}

double ScalarField::value(std::span<const double> x) const {
  require_dim(static_cast<std::size_t>(impl_->dim), x.size());
  return impl_->value(x);
}

ValueGradient ScalarField::eval_with_gradient(std::span<const double> x) const {
  require_dim(static_cast<std::size_t>(impl_->dim), x.size());
  return impl_->value_gradient(x);
}

}  // namespace tangentrep
