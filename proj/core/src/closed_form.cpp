#include "abplab/closed_form.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "abplab/error.hpp"
#include "abplab/format.hpp"

namespace abplab {

namespace {

struct Parsed {
  std::string id;
  std::vector<double> params;
};

Parsed parse_call(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  Parsed p{t, {}};
  const auto open = t.find('(');
  if (open == std::string::npos) return p;
  if (t.back() != ')') throw PreconditionError("'" + text + "': missing closing parenthesis");
  p.id = t.substr(0, open);
  std::stringstream ss(t.substr(open + 1, t.size() - open - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw PreconditionError("'" + text + "': bad parameter '" + item + "'");
    p.params.push_back(v);
  }
  return p;
}

std::string describe(const std::string& id, const std::vector<double>& params) {
  if (params.empty()) return id;
  std::string s = id + "(";
  for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + format_short(params[i]);
  return s + ")";
}

double r2(const Point& x, int n) { return dot(x, x, n); }

void want(const Parsed& p, std::size_t lo, std::size_t hi) {
  if (p.params.size() < lo || p.params.size() > hi)
    throw PreconditionError("'" + p.id + "': wrong number of parameters");
}

}  // namespace

std::string ClosedForm::descriptor() const { return describe(id, params); }

ScalarField ClosedForm::sample(const GridPtr& g) const {
  if (dim != 0 && dim != g->dim())
    throw PreconditionError("closed form " + descriptor() + " is defined in dimension " + std::to_string(dim));
  const int n = g->dim();
  return ScalarField::sample(g, [&](const Point& x) { return value(x, n); });
}

std::vector<std::string> closed_form_ids() {
  return {"bump", "neg_bump", "two_minus_r2", "y2cosx", "abs", "abs_minus_one", "xy", "x2", "cosh_x", "sqrt_r",
          "cos_x_cosh_y", "fractional_solution", "quadratic"};
}

ClosedForm closed_form(const std::string& text) {
  const Parsed p = parse_call(text);
  ClosedForm cf;
  cf.id = p.id;
  cf.params = p.params;
  using H = std::optional<SymMatrix>;

  if (p.id == "bump" || p.id == "neg_bump") {
    want(p, 0, 0);
    const double s = p.id == "bump" ? 1.0 : -1.0;
    cf.value = [s](const Point& x, int n) { return s * (1.0 - r2(x, n)) / (2.0 * n); };
    cf.hessian = [s](const Point&, int n) -> H { return (-s / n) * SymMatrix::identity(n); };
    return cf;
  }
  if (p.id == "two_minus_r2") {
    want(p, 0, 0);
    cf.value = [](const Point& x, int n) { return 2.0 - r2(x, n); };
    cf.hessian = [](const Point&, int n) -> H { return -2.0 * SymMatrix::identity(n); };
    return cf;
  }
  if (p.id == "y2cosx") {
    want(p, 0, 0);
    cf.dim = 2;
    cf.value = [](const Point& x, int) { return x[1] * x[1] * std::cos(x[0]); };
    cf.hessian = [](const Point& x, int) -> H {
      SymMatrix m(2);
      m.set(0, 0, -x[1] * x[1] * std::cos(x[0]));
      m.set(0, 1, -2.0 * x[1] * std::sin(x[0]));
      m.set(1, 1, 2.0 * std::cos(x[0]));
      return m;
    };
    return cf;
  }
  if (p.id == "abs" || p.id == "abs_minus_one" || p.id == "sqrt_r") {
    want(p, 0, 0);
    const double shift = p.id == "abs_minus_one" ? -1.0 : 0.0;
    const bool root = p.id == "sqrt_r";
    cf.value = [shift, root](const Point& x, int n) {
      const double r = std::sqrt(r2(x, n));
      return (root ? std::sqrt(r) : r) + shift;
    };
    cf.hessian = [root](const Point& x, int n) -> H {
      const double r = std::sqrt(r2(x, n));
      if (r == 0.0) return std::nullopt;
      // Radial f(r): D^2 = f'' xhat xhat^T + (f'/r)(I - xhat xhat^T).
      const double f1 = root ? 0.5 / std::sqrt(r) : 1.0;
      const double f2 = root ? -0.25 / (r * std::sqrt(r)) : 0.0;
      const Point xh{x[0] / r, x[1] / r, x[2] / r};
      const SymMatrix P = SymMatrix::outer(xh, n);
      return f2 * P + (f1 / r) * (SymMatrix::identity(n) - P);
    };
    return cf;
  }
  if (p.id == "xy") {
    want(p, 0, 0);
    cf.dim = 2;
    cf.value = [](const Point& x, int) { return x[0] * x[1]; };
    cf.hessian = [](const Point&, int) -> H {
      SymMatrix m(2);
      m.set(0, 1, 1.0);
      return m;
    };
    return cf;
  }
  if (p.id == "x2") {
    want(p, 0, 0);
    cf.value = [](const Point& x, int) { return x[0] * x[0]; };
    cf.hessian = [](const Point&, int n) -> H {
      SymMatrix m(n);
      m.set(0, 0, 2.0);
      return m;
    };
    return cf;
  }
  if (p.id == "cosh_x") {
    want(p, 0, 0);
    cf.value = [](const Point& x, int) { return std::cosh(x[0]); };
    cf.hessian = [](const Point& x, int n) -> H {
      SymMatrix m(n);
      m.set(0, 0, std::cosh(x[0]));
      return m;
    };
    return cf;
  }
  if (p.id == "cos_x_cosh_y") {
    want(p, 0, 0);
    cf.dim = 2;
    cf.value = [](const Point& x, int) { return std::cos(x[0]) * std::cosh(x[1]); };
    cf.hessian = [](const Point& x, int) -> H {
      SymMatrix m(2);
      m.set(0, 0, -std::cos(x[0]) * std::cosh(x[1]));
      m.set(0, 1, -std::sin(x[0]) * std::sinh(x[1]));
      m.set(1, 1, std::cos(x[0]) * std::cosh(x[1]));
      return m;
    };
    return cf;
  }
  if (p.id == "fractional_solution") {
    want(p, 1, 2);
    const double s = p.params[0];
    const int nx = p.params.size() > 1 ? static_cast<int>(p.params[1]) : 1;
    if (!(s > 0.0 && s < 1.0) || nx < 1 || nx > 2) throw PreconditionError("fractional_solution: need 0 < s < 1, n_x in {1,2}");
    const double a = (2.0 * s - 1.0) / s;
    const double c = 2.0 / ((1.0 - a) * (2.0 - a));
    cf.dim = nx + 1;
    cf.value = [a, c, nx](const Point& x, int) { return x[0] * x[0] - c * std::pow(x[nx], 2.0 - a); };
    cf.hessian = [a, nx](const Point& x, int n) -> H {
      SymMatrix m(n);
      m.set(0, 0, 2.0);
      if (x[nx] <= 0.0) {
        if (a > 0.0) return std::nullopt;
        if (a == 0.0) {
          m.set(nx, nx, -2.0);
          return m;
        }
      }
      m.set(nx, nx, -2.0 * std::pow(x[nx], -a));
      return m;
    };
    return cf;
  }
  if (p.id == "quadratic") {
    want(p, 6, 6);
    const auto q = p.params;
    cf.dim = 2;
    cf.value = [q](const Point& x, int) {
      return 0.5 * (q[0] * x[0] * x[0] + 2.0 * q[1] * x[0] * x[1] + q[2] * x[1] * x[1]) + q[3] * x[0] + q[4] * x[1] +
             q[5];
    };
    cf.hessian = [q](const Point&, int) -> H {
      SymMatrix m(2);
      m.set(0, 0, q[0]);
      m.set(0, 1, q[1]);
      m.set(1, 1, q[2]);
      return m;
    };
    return cf;
  }
  throw CatalogError("unknown closed form '" + p.id + "'");
}

std::string DiagonalOperator::descriptor() const { return describe(id, params); }

std::vector<ScalarField> DiagonalOperator::sample(const GridPtr& g) const {
  if (g->dim() != dim) throw PreconditionError("operator " + descriptor() + " has dimension " + std::to_string(dim));
  std::vector<ScalarField> out;
  for (const auto& fn : a) out.push_back(ScalarField::sample(g, fn, true));
  return out;
}

DiagonalOperator linear_operator(const std::string& text) {
  const Parsed p = parse_call(text);
  DiagonalOperator op;
  op.id = p.id;
  op.params = p.params;
  auto one = [](const Point&) { return 1.0; };
  if (p.id == "laplace") {
    want(p, 0, 1);
    op.dim = p.params.empty() ? 2 : static_cast<int>(p.params[0]);
    if (op.dim < 1 || op.dim > 3) throw PreconditionError("laplace: dimension must be 1, 2 or 3");
    op.a.assign(op.dim, one);
    return op;
  }
  if (p.id == "y2cosx") {
    want(p, 0, 0);
    op.dim = 2;
    op.a = {[](const Point&) { return 2.0; }, [](const Point& x) { return x[1] * x[1]; }};
    return op;
  }
  if (p.id == "grushin") {
    want(p, 1, 1);
    const double alpha = p.params[0];
    if (!(alpha >= 0.0 && alpha < 1.0)) throw PreconditionError("grushin: alpha must lie in [0, 1)");
    op.dim = 2;
    op.a = {one, [alpha](const Point& x) { return alpha == 0.0 ? 1.0 : std::pow(std::abs(x[0]), alpha); }};
    return op;
  }
  if (p.id == "abs_gamma") {
    want(p, 1, 1);
    const double gamma = p.params[0];
    if (!(gamma > 0.0)) throw PreconditionError("abs_gamma: gamma must be positive");
    op.dim = 1;
    op.a = {[gamma](const Point& x) { return std::pow(std::abs(x[0]), gamma); }};
    return op;
  }
  if (p.id == "fractional") {
    want(p, 1, 2);
    const double s = p.params[0];
    const int nx = p.params.size() > 1 ? static_cast<int>(p.params[1]) : 1;
    if (!(s > 0.0 && s < 1.0) || nx < 1 || nx > 2) throw PreconditionError("fractional: need 0 < s < 1, n_x in {1,2}");
    const double a = (2.0 * s - 1.0) / s;
    op.dim = nx + 1;
    op.a.assign(nx, one);
    op.a.push_back([a, nx](const Point& x) { return a == 0.0 ? 1.0 : std::pow(x[nx], a); });
    return op;
  }
  throw CatalogError("unknown linear operator '" + p.id + "'");
}

ManufacturedRhs manufactured_rhs(const ClosedForm& u, const DiagonalOperator& op, const GridPtr& g) {
  if (!u.hessian) throw PreconditionError("closed form " + u.descriptor() + " has no analytic Hessian");
  if (g->dim() != op.dim) throw PreconditionError("manufactured_rhs: operator dimension differs from grid");
  const int n = g->dim();
  std::vector<double> f(g->size(), 0.0);
  Mask defined(g->size(), false);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const Point x = g->position(i);
    const auto H = u.hessian(x, n);
    if (!H) continue;
    double s = 0.0;
    bool finite = true;
    for (int a = 0; a < n; ++a) {
      const double c = op.a[a](x);
      const double d = (*H)(a, a);
      finite = finite && std::isfinite(c);
      if (d != 0.0) s += c * d;
    }
    if (!finite || !std::isfinite(s)) continue;
    f[i] = s;
    defined[i] = true;
  }
  return {ScalarField(g, std::move(f)), std::move(defined)};
}

ManufacturedRhs manufactured_rhs(const ClosedForm& u, const EllipticityPair& pair, PucciOperator op, const GridPtr& g) {
  if (!u.hessian) throw PreconditionError("closed form " + u.descriptor() + " has no analytic Hessian");
  if (g->dim() != pair.dim()) throw PreconditionError("manufactured_rhs: profile dimension differs from grid");
  const int n = g->dim();
  std::vector<double> f(g->size(), 0.0);
  Mask defined(g->size(), false);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const Point x = g->position(i);
    const auto H = u.hessian(x, n);
    if (!H) continue;
    double s = 0.0;
    try {
      s = pucci_apply(op, sym_eigenvalues(*H), pair.lambda(x), pair.Lambda(x));
    } catch (const PreconditionError&) {
      continue;
    }
    if (!std::isfinite(s)) continue;
    f[i] = s;
    defined[i] = true;
  }
  return {ScalarField(g, std::move(f)), std::move(defined)};
}

}  // namespace abplab
