#include "zsym/metric.hpp"

#include "zsym/errors.hpp"

namespace zsym {

MetricSpec::MetricSpec(Chart chart) : chart_(std::move(chart)) {
  const std::size_t n = static_cast<std::size_t>(chart_.dimension());
  g_.assign(n * n, Expr());
}

const Expr& MetricSpec::g(int i, int j) const {
  const int n = dimension();
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error("MetricSpec::g: index out of range");
  return g_[static_cast<std::size_t>(i * n + j)];
}

void MetricSpec::set_g(int i, int j, Expr value) {
  const int n = dimension();
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error("MetricSpec::set_g: index out of range");
  Expr v = normalize(value);
  g_[static_cast<std::size_t>(i * n + j)] = v;
  g_[static_cast<std::size_t>(j * n + i)] = v;
}

void MetricSpec::set_one_form(const std::string& name, OneForm form) {
  if (form.dimension() != dimension())
    throw Error("one-form '" + name + "' has " + std::to_string(form.dimension()) +
                " components, chart dimension is " + std::to_string(dimension()));
  one_forms_[name] = std::move(form);
}

const OneForm* MetricSpec::find_one_form(const std::string& name) const {
  auto it = one_forms_.find(name);
  return it == one_forms_.end() ? nullptr : &it->second;
}

}  // namespace zsym
