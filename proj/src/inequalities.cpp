#include "opradius/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <sstream>

#include "opradius/errors.hpp"
#include "opradius/functionals.hpp"

namespace opradius {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::numbers::sqrt2;

double sq(double x) { return x * x; }
double N(const Matrix& m) { return m.size() == 0 ? 0.0 : spectral_norm(m); }
double W(const Matrix& m) { return matrix_numerical_radius(m); }
Matrix adj(const Matrix& m) { return m.adjoint(); }

Matrix identity(const EvalContext& c) {
  const Eigen::Index r = static_cast<Eigen::Index>(c.space.rank());
  return Matrix::Identity(r, r);
}

Matrix zero(const EvalContext& c) {
  const Eigen::Index r = static_cast<Eigen::Index>(c.space.rank());
  return Matrix::Zero(r, r);
}

// <u, v> = v* u on compressed vectors.
cplx ip(const Vector& u, const Vector& v) { return v.dot(u); }

Matrix sum_ops(const EvalContext& c) {
  Matrix s = zero(c);
  for (const Matrix& x : c.m) s += x;
  return s;
}

Matrix sum_gram(const EvalContext& c) {
  Matrix s = zero(c);
  for (const Matrix& x : c.m) s += x.adjoint() * x;
  return s;
}

// Power of the Hermitian PSD compression of an A-positive operator.
Matrix pos_pow(const Matrix& m, double p) {
  if (m.size() == 0) return m;
  return psd_power(hermitian_part(m), p);
}

double cartesian_defect(const Matrix& t) {
  const Matrix re = 0.5 * (t + t.adjoint());
  const Matrix im = (t - t.adjoint()) / cplx(0.0, 2.0);
  return std::abs(sq(N(re)) - sq(N(im)));
}

bool is_positive(const EvalContext& c, const Matrix& m) {
  if (m.size() == 0) return true;
  const double f = m.norm();
  if (!c.negligible(m - m.adjoint(), f)) return false;
  const RealVector ev = hermitian_eigenvalues(hermitian_part(m));
  const double slack = c.space.tol() * std::max(1.0, c.space.condition()) * (1.0 + f);
  return ev(0) >= -slack;
}

ParamSpec alpha_spec() { return {"alpha", 0.0, 1.0, 0.5, {0.0, 0.25, 0.5, 0.75, 1.0}}; }
ParamSpec r_spec() { return {"r", 1.0, kInf, 1.0, {1.0, 2.0, 3.0}}; }
ParamSpec r_spec_final() { return {"r", 1.0, kInf, 2.0, {1.0, 2.0, 3.0}}; }
ParamSpec p_spec() { return {"p", 1.0, kInf, 2.0, {2.0, 3.0}}; }
ParamSpec power_spec() { return {"n", 1.0, kInf, 2.0, {2.0, 3.0, 4.0}}; }

Signature fixed_ops(int count, std::string text) {
  Signature s;
  s.group = count;
  s.min_blocks = 1;
  s.max_blocks = 1;
  s.block_grid = {1};
  s.text = std::move(text);
  return s;
}

Signature nary(std::string text, int group = 1) {
  Signature s;
  s.group = group;
  s.min_blocks = 1;
  s.max_blocks = 64;
  s.block_grid = {2, 3, 4};
  s.text = std::move(text);
  return s;
}

Signature vectors_only(int count, std::string text) {
  Signature s;
  s.group = 0;
  s.min_blocks = 0;
  s.max_blocks = 0;
  s.block_grid = {0};
  s.vectors = count;
  s.text = std::move(text);
  return s;
}

struct Builder {
  std::vector<InequalityCatalogEntry> entries;

  InequalityCatalogEntry& add(std::string id, std::string statement, std::string source,
                              Family family, Signature sig,
                              std::function<Sides(const EvalContext&)> sides) {
    InequalityCatalogEntry e;
    e.id = std::move(id);
    e.statement = std::move(statement);
    e.source = std::move(source);
    e.variant = "as-stated";
    e.family = family;
    e.signature = std::move(sig);
    e.sides = std::move(sides);
    entries.push_back(std::move(e));
    return entries.back();
  }
};

// sqrt(w^2(T) - |||Re T||^2 - ||Im T||^2| / 2), clamped at zero against rounding.
double refined_radius(const Matrix& t) {
  return std::sqrt(std::max(0.0, sq(W(t)) - 0.5 * cartesian_defect(t)));
}

std::string positivity_reason(const EvalContext& c) {
  for (std::size_t j = 0; j < c.blocks(); ++j) {
    if (!is_positive(c, c.m[3 * j]) || !is_positive(c, c.m[3 * j + 2])) {
      return "T_j and S_j must be A-positive";
    }
  }
  return {};
}

// sum_j T_j^a X_j S_j^b over (T_j, X_j, S_j) blocks.
Matrix triple_sum(const EvalContext& c, double a, double b) {
  Matrix s = zero(c);
  for (std::size_t j = 0; j < c.blocks(); ++j) {
    s += pos_pow(c.m[3 * j], a) * c.m[3 * j + 1] * pos_pow(c.m[3 * j + 2], b);
  }
  return s;
}

double max_middle_norm(const EvalContext& c) {
  double x = 0.0;
  for (std::size_t j = 0; j < c.blocks(); ++j) x = std::max(x, N(c.m[3 * j + 1]));
  return x;
}

Sides mrq1(const EvalContext& c, double exponent_scale) {
  const double alpha = c.param("alpha");
  const double r = c.param("r");
  const double p = c.param("p");
  const double q = p / (p - 1.0);
  const double n = static_cast<double>(c.blocks());
  const double lhs = std::pow(W(triple_sum(c, alpha, alpha)), r);
  double total = 0.0;
  for (std::size_t j = 0; j < c.blocks(); ++j) {
    const Matrix inner = pos_pow(c.m[3 * j], exponent_scale * p * r) / p +
                         pos_pow(c.m[3 * j + 2], exponent_scale * q * r) / q;
    total += std::pow(N(inner), alpha);
  }
  return {lhs, std::pow(n, r - 1.0) * std::pow(max_middle_norm(c), r) * total};
}

std::string mrq1_reason(const EvalContext& c) {
  const double p = c.param("p");
  const double q = p / (p - 1.0);
  const double r = c.param("r");
  if (p * r < 2.0 || q * r < 2.0) return "requires p*r >= 2 and q*r >= 2";
  return positivity_reason(c);
}

std::vector<InequalityCatalogEntry> build_catalog() {
  Builder b;

  b.add("CSTAR", "||T#T||_A = ||TT#||_A = ||T||_A^2 = ||T#||_A^2",
        "C*-identity for the reduced A-adjoint", Family::single, fixed_ops(1, "T"),
        [](const EvalContext& c) {
          const Matrix& t = c.m[0];
          const double n2 = sq(N(t));
          const double v[3] = {N(t.adjoint() * t), N(t * t.adjoint()), sq(N(t.adjoint()))};
          double far = v[0];
          for (double x : v) {
            if (std::abs(x - n2) > std::abs(far - n2)) far = x;
          }
          return Sides{n2, far, true,
                       {{"adjoint_gram", v[0]}, {"gram_adjoint", v[1]}, {"adjoint_norm_sq", v[2]}}};
        });

  b.add("NORM-EQUIV", "||T||_A / 2 <= w_A(T) <= ||T||_A",
        "equivalence of A-numerical radius and A-seminorm", Family::single, fixed_ops(1, "T"),
        [](const EvalContext& c) {
          const double n = N(c.m[0]);
          const double w = W(c.m[0]);
          const double lower = w - 0.5 * n;
          const double upper = n - w;
          Sides s = upper <= lower ? Sides{w, n} : Sides{0.5 * n, w};
          s.extras = {{"lower_margin", lower}, {"upper_margin", upper}, {"norm", n}, {"radius", w}};
          return s;
        });

  b.add("POWER", "w_A(T^n) <= w_A(T)^n", "power inequality", Family::single,
        fixed_ops(1, "T"),
        [](const EvalContext& c) {
          const int k = static_cast<int>(c.param("n"));
          Matrix p = identity(c);
          for (int i = 0; i < k; ++i) p = p * c.m[0];
          return Sides{W(p), std::pow(W(c.m[0]), k)};
        })
      .params = {power_spec()};

  b.add("PROD4", "w_A(TS) <= 4 w_A(T) w_A(S)", "product bound, general operators",
        Family::generic, fixed_ops(2, "T, S"), [](const EvalContext& c) {
          return Sides{W(c.m[0] * c.m[1]), 4.0 * W(c.m[0]) * W(c.m[1])};
        });

  {
    auto& e = b.add("PROD2", "TS = ST => w_A(TS) <= 2 w_A(T) w_A(S)",
                    "product bound, commuting operators", Family::commuting,
                    fixed_ops(2, "T, S commuting"), [](const EvalContext& c) {
                      return Sides{W(c.m[0] * c.m[1]), 2.0 * W(c.m[0]) * W(c.m[1])};
                    });
    e.inapplicable = [](const EvalContext& c) -> std::string {
      const Matrix comm = c.m[0] * c.m[1] - c.m[1] * c.m[0];
      if (!c.negligible(comm, c.m[0].norm() * c.m[1].norm())) return "TS != ST";
      return {};
    };
  }

  {
    auto& e = b.add("PROD1", "T, S A-normal => w_A(TS) <= w_A(T) w_A(S)",
                    "product bound, A-normal operators", Family::a_normal,
                    fixed_ops(2, "T, S A-normal"), [](const EvalContext& c) {
                      return Sides{W(c.m[0] * c.m[1]), W(c.m[0]) * W(c.m[1])};
                    });
    e.inapplicable = [](const EvalContext& c) -> std::string {
      for (int i = 0; i < 2; ++i) {
        const Matrix& m = c.m[static_cast<std::size_t>(i)];
        if (!c.negligible(m.adjoint() * m - m * m.adjoint(), m.squaredNorm())) {
          return "operand is not A-normal";
        }
      }
      return {};
    };
  }

  b.add("SUBMULT", "||TS||_A <= ||T||_A ||S||_A", "submultiplicativity of the A-seminorm",
        Family::generic, fixed_ops(2, "T, S"),
        [](const EvalContext& c) { return Sides{N(c.m[0] * c.m[1]), N(c.m[0]) * N(c.m[1])}; });

  {
    auto& e = b.add(
        "RA1.stated",
        "||sum X_k||_A^2 <= ||sum X_k#X_k||_A^2 + 1/2 ||(n-2) sum X_k#X_k + sum X_k# sum X_k||_A",
        "A-norm of a sum of operators, printed form", Family::generic, nary("X_1..X_n"),
        [](const EvalContext& c) {
          const double n = static_cast<double>(c.m.size());
          const Matrix g = sum_gram(c);
          const Matrix s = sum_ops(c);
          return Sides{sq(N(s)), sq(N(g)) + 0.5 * N((n - 2.0) * g + adj(s) * s)};
        });
    e.flagged = true;
  }

  b.add("RA1.proof",
        "||sum X_k||_A^2 <= ||sum X_k#X_k||_A + 1/2 ||(n-2) sum X_k#X_k + sum X_k# sum X_k||_A",
        "A-norm of a sum of operators, form reached by the argument", Family::generic,
        nary("X_1..X_n"),
        [](const EvalContext& c) {
          const double n = static_cast<double>(c.m.size());
          const Matrix g = sum_gram(c);
          const Matrix s = sum_ops(c);
          return Sides{sq(N(s)), N(g) + 0.5 * N((n - 2.0) * g + adj(s) * s)};
        })
      .variant = "proof-consistent";

  b.add("RAN", "||sum X_k||_A^2 <= n ||sum X_k#X_k||_A", "triangle-inequality consequence",
        Family::generic, nary("X_1..X_n"), [](const EvalContext& c) {
          const double n = static_cast<double>(c.m.size());
          return Sides{sq(N(sum_ops(c))), n * N(sum_gram(c))};
        });

  b.add("RA6", "||(B+C)/2||_A^2 <= ||(B#B + C#C)/2||_A", "two-operator case of the sum bound",
        Family::generic, fixed_ops(2, "B, C"), [](const EvalContext& c) {
          const Matrix& x = c.m[0];
          const Matrix& y = c.m[1];
          return Sides{sq(N(0.5 * (x + y))), N(0.5 * (adj(x) * x + adj(y) * y))};
        });

  b.add("RA7", "||(X+X#)/2||_A^2 <= ||(X#X + XX#)/2||_A", "two-operator case with C = X#",
        Family::single, fixed_ops(1, "X"), [](const EvalContext& c) {
          const Matrix& x = c.m[0];
          return Sides{sq(N(0.5 * (x + adj(x)))), N(0.5 * (adj(x) * x + x * adj(x)))};
        });

  b.add("RA8", "||T||_A^2 <= ||T#T + TT#||_A", "Cartesian decomposition bound", Family::single,
        fixed_ops(1, "T"), [](const EvalContext& c) {
          const Matrix& t = c.m[0];
          return Sides{sq(N(t)), N(adj(t) * t + t * adj(t))};
        });

  b.add("RB1",
        "||sum X_k||_A^2 <= ||sum X_k#X_k||_A + 1/2 ||sum_j X_j# sum_k X_k - sum X_k#X_k||_A^2 + 1/2",
        "second refinement of the sum bound", Family::generic, nary("X_1..X_n"),
        [](const EvalContext& c) {
          const Matrix g = sum_gram(c);
          const Matrix s = sum_ops(c);
          return Sides{sq(N(s)), N(g) + 0.5 * sq(N(adj(s) * s - g)) + 0.5};
        });

  b.add("RT1", "||T+S||_A^2 <= ||T#T + S#S||_A + 1/2 ||T#S + S#T||_A^2 + 1/2",
        "two-operator case of the second refinement", Family::generic, fixed_ops(2, "T, S"),
        [](const EvalContext& c) {
          const Matrix& t = c.m[0];
          const Matrix& s = c.m[1];
          return Sides{sq(N(t + s)),
                       N(adj(t) * t + adj(s) * s) + 0.5 * sq(N(adj(t) * s + adj(s) * t)) + 0.5};
        });

  b.add("RT2", "||X+X#||_A^2 <= ||X#X + XX#||_A + 1/2 ||(X#)^2 + X^2||_A^2 + 1/2",
        "second refinement with S = X#", Family::single, fixed_ops(1, "X"),
        [](const EvalContext& c) {
          const Matrix& x = c.m[0];
          const Matrix xa = adj(x);
          return Sides{sq(N(x + xa)), N(xa * x + x * xa) + 0.5 * sq(N(xa * xa + x * x)) + 0.5};
        });

  b.add("RT3", "||T||_A^2 <= 1/2 ||T#T + TT#||_A + 1/4 ||T#T - TT#||_A^2 + 1/2",
        "second refinement on the Cartesian parts", Family::single, fixed_ops(1, "T"),
        [](const EvalContext& c) {
          const Matrix& t = c.m[0];
          const Matrix ta = adj(t);
          return Sides{sq(N(t)), 0.5 * N(ta * t + t * ta) + 0.25 * sq(N(ta * t - t * ta)) + 0.5};
        });

  b.add("CT1",
        "||sum X_k||_A^2 + sum ||X_k||_A^2 <= ||sum X_k#X_k||_A + 1/4 sum_{j,k} ||X_j + X_k||_A^2",
        "pairwise-sum bound", Family::generic, nary("X_1..X_n"), [](const EvalContext& c) {
          double lhs = sq(N(sum_ops(c)));
          double pairs = 0.0;
          for (const Matrix& x : c.m) lhs += sq(N(x));
          for (const Matrix& x : c.m) {
            for (const Matrix& y : c.m) pairs += sq(N(x + y));
          }
          return Sides{lhs, N(sum_gram(c)) + 0.25 * pairs};
        });

  {
    auto& e = b.add(
        "TD1.stated",
        "||sum X_k||_A^2 + sum ||X_k||_A^2 <= ||sum X_k#X_k||_A + 1/4 ||sum_{j!=k} X_k#X_k + I||_A^2",
        "identity-shift bound, printed form", Family::generic, nary("X_1..X_n"),
        [](const EvalContext& c) {
          const double n = static_cast<double>(c.m.size());
          double lhs = sq(N(sum_ops(c)));
          for (const Matrix& x : c.m) lhs += sq(N(x));
          const Matrix g = sum_gram(c);
          return Sides{lhs, N(g) + 0.25 * sq(N((n - 1.0) * g + identity(c)))};
        });
    e.flagged = true;
  }

  {
    auto& e = b.add(
        "TD1.proof",
        "||sum X_k||_A^2 + sum ||X_k||_A^2 <= ||sum X_k#X_k||_A + 1/4 ||sum_{j!=k} X_j#X_k + I||_A^2",
        "identity-shift bound, cross-term reading", Family::generic, nary("X_1..X_n"),
        [](const EvalContext& c) {
          double lhs = sq(N(sum_ops(c)));
          for (const Matrix& x : c.m) lhs += sq(N(x));
          const Matrix g = sum_gram(c);
          const Matrix s = sum_ops(c);
          return Sides{lhs, N(g) + 0.25 * sq(N(adj(s) * s - g + identity(c)))};
        });
    e.flagged = true;
    e.variant = "proof-consistent";
  }

  b.add("TT1",
        "||TT# + SS#||_A <= max(||T+S||_A^2, ||T-S||_A^2) - |||T+S||_A^2 - ||T-S||_A^2| / 2",
        "parallelogram-type bound", Family::generic, fixed_ops(2, "T, S"),
        [](const EvalContext& c) {
          const Matrix& t = c.m[0];
          const Matrix& s = c.m[1];
          const double p = sq(N(t + s));
          const double m = sq(N(t - s));
          return Sides{N(t * adj(t) + s * adj(s)), std::max(p, m) - 0.5 * std::abs(p - m)};
        });

  b.add("TT2",
        "||TT# + T#T||_A <= 4 max(||Re_A T||^2, ||Im_A T||^2) - 2 |||Re_A T||^2 - ||Im_A T||^2|",
        "parallelogram-type bound with S = T#", Family::single, fixed_ops(1, "T"),
        [](const EvalContext& c) {
          const Matrix& t = c.m[0];
          const double re = sq(N(0.5 * (t + adj(t))));
          const double im = sq(N((t - adj(t)) / cplx(0.0, 2.0)));
          return Sides{N(t * adj(t) + adj(t) * t), 4.0 * std::max(re, im) - 2.0 * std::abs(re - im)};
        });

  b.add("QA1", "w_A(TS + ST) <= 2 sqrt(2) ||T||_A w_A(S)", "anticommutator radius bound",
        Family::generic, fixed_ops(2, "T, S"), [](const EvalContext& c) {
          const Matrix& t = c.m[0];
          const Matrix& s = c.m[1];
          return Sides{W(t * s + s * t), 2.0 * kSqrt2 * N(t) * W(s)};
        });

  {
    Signature sig = fixed_ops(1, "T; vector x");
    sig.vectors = 1;
    auto& e = b.add(
        "QA5",
        "w_A(T) <= 1, ||x||_A = 1 => ||Tx||_A^2 + ||T#x||_A^2 <= 4 (1 - |||Re_A T||^2 - ||Im_A T||^2| / 2)",
        "vector bound refined by the Cartesian defect", Family::single, sig,
        [](const EvalContext& c) {
          const double w = W(c.m[0]);
          const Matrix t = c.m[0] / w;
          const Vector x = c.y[0] / c.y[0].norm();
          const double lhs = sq((t * x).norm()) + sq((adj(t) * x).norm());
          return Sides{lhs, 4.0 * (1.0 - 0.5 * cartesian_defect(t)), false, {{"scale", w}}};
        });
    e.inapplicable = [](const EvalContext& c) -> std::string {
      if (W(c.m[0]) <= 0.0) return "w_A(T) = 0";
      if (c.y[0].norm() <= 0.0) return "||x||_A = 0";
      return {};
    };
  }

  for (int sign : {1, -1}) {
    const std::string suffix = sign > 0 ? ".plus" : ".minus";
    const std::string op = sign > 0 ? "+" : "-";
    b.add("GN" + suffix,
          "w_A(TXS " + op +
              " SYT) <= 2 sqrt(2) ||S||_A max(||X||_A, ||Y||_A) sqrt(w_A^2(T) - |||Re_A T||^2 - ||Im_A T||^2| / 2)",
          "general radius bound", Family::generic, fixed_ops(4, "T, S, X, Y"),
          [sign](const EvalContext& c) {
            const Matrix& t = c.m[0];
            const Matrix& s = c.m[1];
            const Matrix& x = c.m[2];
            const Matrix& y = c.m[3];
            const Matrix g = t * x * s + static_cast<double>(sign) * (s * y * t);
            return Sides{W(g), 2.0 * kSqrt2 * N(s) * std::max(N(x), N(y)) * refined_radius(t)};
          });
  }

  for (int sign : {1, -1}) {
    const std::string suffix = sign > 0 ? ".plus" : ".minus";
    const std::string op = sign > 0 ? "+" : "-";
    b.add("MM1" + suffix,
          "w_A(TS " + op + " ST) <= 2 sqrt(2) ||S||_A sqrt(w_A^2(T) - |||Re_A T||^2 - ||Im_A T||^2| / 2)",
          "general radius bound with X = Y = I", Family::generic, fixed_ops(2, "T, S"),
          [sign](const EvalContext& c) {
            const Matrix& t = c.m[0];
            const Matrix& s = c.m[1];
            const Matrix g = t * s + static_cast<double>(sign) * (s * t);
            return Sides{W(g), 2.0 * kSqrt2 * N(s) * refined_radius(t)};
          });
  }

  b.add("MM2", "w_A(T^2) <= sqrt(2) ||T||_A sqrt(w_A^2(T) - |||Re_A T||^2 - ||Im_A T||^2| / 2)",
        "general radius bound with S = T", Family::single, fixed_ops(1, "T"),
        [](const EvalContext& c) {
          const Matrix& t = c.m[0];
          return Sides{W(t * t), kSqrt2 * N(t) * refined_radius(t)};
        });

  b.add("XY2", "||sum T_k||_A^2 <= sum_j w_A(T_j# sum_k T_k)", "intermediate sum bound",
        Family::generic, nary("T_1..T_n"), [](const EvalContext& c) {
          const Matrix s = sum_ops(c);
          double rhs = 0.0;
          for (const Matrix& t : c.m) rhs += W(adj(t) * s);
          return Sides{sq(N(s)), rhs};
        });

  b.add("ST1", "||sum T_k||_A^2 <= 4 w_A(sum T_k) sum_j w_A(T_j)", "sum bound via radii",
        Family::generic, nary("T_1..T_n"), [](const EvalContext& c) {
          const Matrix s = sum_ops(c);
          double total = 0.0;
          for (const Matrix& t : c.m) total += W(t);
          return Sides{sq(N(s)), 4.0 * W(s) * total};
        });

  {
    auto& e = b.add("ST2",
                    "sum T_k commutes with each T_j# => ||sum T_k||_A^2 <= 2 w_A(sum T_k) sum_j w_A(T_j)",
                    "sum bound via radii, commuting case", Family::commuting,
                    nary("T_1..T_n with sum T_k commuting with each T_j#"),
                    [](const EvalContext& c) {
                      const Matrix s = sum_ops(c);
                      double total = 0.0;
                      for (const Matrix& t : c.m) total += W(t);
                      return Sides{sq(N(s)), 2.0 * W(s) * total};
                    });
    e.inapplicable = [](const EvalContext& c) -> std::string {
      const Matrix s = sum_ops(c);
      for (const Matrix& t : c.m) {
        const Matrix comm = s * adj(t) - adj(t) * s;
        if (!c.negligible(comm, s.norm() * t.norm())) return "sum does not commute with T_j#";
      }
      return {};
    };
  }

  {
    auto& e = b.add("BUZANO", "||z||_A = 1 => |<x,z>_A <z,y>_A| <= (||x||_A ||y||_A + |<x,y>_A|) / 2",
                    "Buzano-type vector bound", Family::vectors, vectors_only(3, "x, y, z"),
                    [](const EvalContext& c) {
                      const Vector& x = c.y[0];
                      const Vector& y = c.y[1];
                      const Vector z = c.y[2] / c.y[2].norm();
                      return Sides{std::abs(ip(x, z) * ip(z, y)),
                                   0.5 * (x.norm() * y.norm() + std::abs(ip(x, y)))};
                    });
    e.inapplicable = [](const EvalContext& c) -> std::string {
      return c.y[2].norm() > 0.0 ? std::string{} : "||z||_A = 0";
    };
  }

  {
    auto& e = b.add(
        "MD1",
        "||e||_A = 1 => |<a,e>_A <e,b>_A| <= (1+alpha)/2 ||a||_A ||b||_A + (1-alpha)/2 |<a,b>_A|",
        "interpolated Buzano bound", Family::vectors, vectors_only(3, "a, b, e"),
        [](const EvalContext& c) {
          const double al = c.param("alpha");
          const Vector& a = c.y[0];
          const Vector& bb = c.y[1];
          const Vector e = c.y[2] / c.y[2].norm();
          return Sides{std::abs(ip(a, e) * ip(e, bb)),
                       0.5 * (1.0 + al) * a.norm() * bb.norm() + 0.5 * (1.0 - al) * std::abs(ip(a, bb))};
        });
    e.params = {alpha_spec()};
    e.inapplicable = [](const EvalContext& c) -> std::string {
      return c.y[2].norm() > 0.0 ? std::string{} : "||e||_A = 0";
    };
  }

  {
    auto& e = b.add(
        "MD2",
        "||e||_A = 1 => |<a,e>_A <e,b>_A|^r <= (1+alpha)/2 ||a||^r ||b||^r + (1-alpha)/2 |<a,b>_A|^r",
        "interpolated Buzano bound, r-th power", Family::vectors, vectors_only(3, "a, b, e"),
        [](const EvalContext& c) {
          const double al = c.param("alpha");
          const double r = c.param("r");
          const Vector& a = c.y[0];
          const Vector& bb = c.y[1];
          const Vector e = c.y[2] / c.y[2].norm();
          return Sides{std::pow(std::abs(ip(a, e) * ip(e, bb)), r),
                       0.5 * (1.0 + al) * std::pow(a.norm() * bb.norm(), r) +
                           0.5 * (1.0 - al) * std::pow(std::abs(ip(a, bb)), r)};
        });
    e.params = {alpha_spec(), r_spec()};
    e.inapplicable = [](const EvalContext& c) -> std::string {
      return c.y[2].norm() > 0.0 ? std::string{} : "||e||_A = 0";
    };
  }

  b.add("RA2", "Re <a,b>_A <= ||a + b||_A^2 / 4", "elementary vector inequality", Family::vectors,
        vectors_only(2, "a, b"), [](const EvalContext& c) {
          return Sides{ip(c.y[0], c.y[1]).real(), 0.25 * sq((c.y[0] + c.y[1]).norm())};
        });

  b.add("MD3",
        "w_A^{2r}(T) <= (1+alpha)/4 ||(T#T)^r + (TT#)^r||_A + (1-alpha)/2 w_A^r(T^2)",
        "radius bound from the interpolated Buzano inequality", Family::single, fixed_ops(1, "T"),
        [](const EvalContext& c) {
          const double al = c.param("alpha");
          const double r = c.param("r");
          const Matrix& t = c.m[0];
          const Matrix g = pos_pow(adj(t) * t, r) + pos_pow(t * adj(t), r);
          return Sides{std::pow(W(t), 2.0 * r),
                       0.25 * (1.0 + al) * N(g) + 0.5 * (1.0 - al) * std::pow(W(t * t), r)};
        })
      .params = {alpha_spec(), r_spec()};

  {
    Signature sig;
    sig.group = 0;
    sig.min_blocks = 0;
    sig.max_blocks = 0;
    sig.block_grid = {0};
    sig.scalars = 2;
    sig.text = "a, b >= 0";
    auto scalar_reason = [](const EvalContext& c) -> std::string {
      return c.s[0] >= 0.0 && c.s[1] >= 0.0 ? std::string{} : "a and b must be nonnegative";
    };
    auto& w = b.add("AG.weighted",
                    "a^alpha b^(1-alpha) <= alpha a + (1-alpha) b <= (alpha a^r + (1-alpha) b^r)^(1/r)",
                    "weighted mean chain", Family::scalars, sig, [](const EvalContext& c) {
                      const double a = c.s[0];
                      const double bb = c.s[1];
                      const double al = c.param("alpha");
                      const double r = c.param("r");
                      const double geo = std::pow(a, al) * std::pow(bb, 1.0 - al);
                      const double ari = al * a + (1.0 - al) * bb;
                      const double pw = std::pow(al * std::pow(a, r) + (1.0 - al) * std::pow(bb, r), 1.0 / r);
                      Sides s = (ari - geo) <= (pw - ari) ? Sides{geo, ari} : Sides{ari, pw};
                      s.extras = {{"geometric", geo}, {"arithmetic", ari}, {"power_mean", pw}};
                      return s;
                    });
    w.params = {alpha_spec(), r_spec()};
    w.inapplicable = scalar_reason;

    auto& y = b.add("AG.young", "ab <= a^p/p + b^q/q <= (a^(pr)/p + b^(qr)/q)^(1/r)",
                    "Young chain with conjugate exponents", Family::scalars, sig,
                    [](const EvalContext& c) {
                      const double a = c.s[0];
                      const double bb = c.s[1];
                      const double p = c.param("p");
                      const double q = p / (p - 1.0);
                      const double r = c.param("r");
                      const double prod = a * bb;
                      const double young = std::pow(a, p) / p + std::pow(bb, q) / q;
                      const double pw = std::pow(std::pow(a, p * r) / p + std::pow(bb, q * r) / q, 1.0 / r);
                      Sides s = (young - prod) <= (pw - young) ? Sides{prod, young} : Sides{young, pw};
                      s.extras = {{"product", prod}, {"young", young}, {"power_form", pw}};
                      return s;
                    });
    y.params = {p_spec(), r_spec()};
    y.inapplicable = scalar_reason;
  }

  {
    auto& e = b.add(
        "MRQ1.stated",
        "w_A^r(sum T_j^alpha X_j S_j^alpha) <= n^(r-1) ||X||^r sum ||T_j^(2pr)/p + S_j^(2qr)/q||_A^alpha",
        "mixed power bound for A-positive factors, printed exponents", Family::positive_triples,
        nary("(T_j, X_j, S_j) triples, T_j and S_j A-positive", 3),
        [](const EvalContext& c) { return mrq1(c, 2.0); });
    e.params = {alpha_spec(), r_spec(), p_spec()};
    e.inapplicable = mrq1_reason;
    e.flagged = true;
  }

  {
    auto& e = b.add(
        "MRQ1.proof",
        "w_A^r(sum T_j^alpha X_j S_j^alpha) <= n^(r-1) ||X||^r sum ||T_j^(pr)/p + S_j^(qr)/q||_A^alpha",
        "mixed power bound for A-positive factors, exponents reached by the argument",
        Family::positive_triples, nary("(T_j, X_j, S_j) triples, T_j and S_j A-positive", 3),
        [](const EvalContext& c) { return mrq1(c, 1.0); });
    e.params = {alpha_spec(), r_spec(), p_spec()};
    e.inapplicable = mrq1_reason;
    e.variant = "proof-consistent";
  }

  {
    auto& e = b.add(
        "FINAL1",
        "w_A^r(sum T_j^alpha X_j S_j^(1-alpha)) <= n^(r-1) ||X||^r sum ||alpha T_j^r + (1-alpha) S_j^r||_A",
        "weighted power bound for A-positive factors", Family::positive_triples,
        nary("(T_j, X_j, S_j) triples, T_j and S_j A-positive", 3), [](const EvalContext& c) {
          const double al = c.param("alpha");
          const double r = c.param("r");
          const double n = static_cast<double>(c.blocks());
          const double lhs = std::pow(W(triple_sum(c, al, 1.0 - al)), r);
          double total = 0.0;
          for (std::size_t j = 0; j < c.blocks(); ++j) {
            total += N(al * pos_pow(c.m[3 * j], r) + (1.0 - al) * pos_pow(c.m[3 * j + 2], r));
          }
          return Sides{lhs, std::pow(n, r - 1.0) * std::pow(max_middle_norm(c), r) * total};
        });
    e.params = {alpha_spec(), r_spec_final()};
    e.inapplicable = [](const EvalContext& c) -> std::string {
      if (c.param("r") < 2.0) return "requires r >= 2";
      return positivity_reason(c);
    };
  }

  return std::move(b.entries);
}

void hash_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

void hash_double(std::uint64_t& h, double x) {
  if (x == 0.0) x = 0.0;  // fold -0 into +0
  hash_bytes(h, &x, sizeof x);
}

void hash_matrix(std::uint64_t& h, const Matrix& m) {
  const std::int64_t shape[2] = {m.rows(), m.cols()};
  hash_bytes(h, shape, sizeof shape);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      hash_double(h, m(i, j).real());
      hash_double(h, m(i, j).imag());
    }
  }
}

void check_signature(const InequalityCatalogEntry& e, const Operands& o) {
  const Signature& s = e.signature;
  std::ostringstream os;
  bool ok = true;
  if (s.group == 0) {
    ok = o.ops.empty();
  } else {
    const std::size_t g = static_cast<std::size_t>(s.group);
    const std::size_t blocks = o.ops.size() / g;
    ok = o.ops.size() % g == 0 && blocks >= static_cast<std::size_t>(s.min_blocks) &&
         blocks <= static_cast<std::size_t>(s.max_blocks);
  }
  ok = ok && o.vecs.size() == static_cast<std::size_t>(s.vectors) &&
       o.scalars.size() == static_cast<std::size_t>(s.scalars);
  if (!ok) {
    os << e.id << " expects " << s.text << "; got " << o.ops.size() << " operator(s), "
       << o.vecs.size() << " vector(s), " << o.scalars.size() << " scalar(s)";
    raise(Errc::signature_mismatch, os.str());
  }
}

}  // namespace

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::satisfied: return "Satisfied";
    case Status::violated: return "Violated";
    case Status::inapplicable: return "Inapplicable";
  }
  return "Unknown";
}

Status judge(double lhs, double rhs, bool equality, const Tolerance& tol) noexcept {
  const double band = tol.abs + tol.rel * std::max(std::abs(lhs), std::abs(rhs));
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return Status::violated;
  if (lhs > rhs + band) return Status::violated;
  if (equality && lhs < rhs - band) return Status::violated;
  return Status::satisfied;
}

std::size_t EvalContext::blocks() const {
  return group > 0 ? m.size() / static_cast<std::size_t>(group) : 0;
}

bool EvalContext::negligible(const Matrix& x, double scale) const {
  return x.norm() <= space.tol() * std::max(1.0, space.condition()) * (1.0 + scale);
}

const std::vector<InequalityCatalogEntry>& list_catalog() {
  static const std::vector<InequalityCatalogEntry> catalog = build_catalog();
  return catalog;
}

const InequalityCatalogEntry& find_entry(std::string_view id) {
  for (const auto& e : list_catalog()) {
    if (e.id == id) return e;
  }
  raise(Errc::unknown_entry, "no catalog entry named '" + std::string(id) + "'");
}

Params resolve_params(const InequalityCatalogEntry& e, const Params& given) {
  Params out;
  for (const auto& [name, value] : given) {
    const bool known = std::any_of(e.params.begin(), e.params.end(),
                                   [&](const ParamSpec& p) { return p.name == name; });
    if (!known) raise(Errc::bad_parameter, e.id + " takes no parameter '" + name + "'");
  }
  for (const ParamSpec& p : e.params) {
    const auto it = given.find(p.name);
    const double v = it == given.end() ? p.fallback : it->second;
    bool ok = std::isfinite(v) && v >= p.lo && v <= p.hi;
    if (p.name == "p") ok = ok && v > 1.0;
    if (p.name == "n") ok = ok && v == std::floor(v);
    if (!ok) {
      std::ostringstream os;
      os << e.id << ": parameter " << p.name << " = " << v << " out of range";
      raise(Errc::bad_parameter, os.str());
    }
    out[p.name] = v;
  }
  return out;
}

MarginReport evaluate(std::string_view id, const SemiHilbertSpace& space, const Operands& operands,
                      const Params& params, const Tolerance& tol) {
  const InequalityCatalogEntry& e = find_entry(id);
  check_signature(e, operands);

  EvalContext ctx{space, {}, {}, operands.scalars, resolve_params(e, params)};
  ctx.group = e.signature.group;
  ctx.m.reserve(operands.ops.size());
  for (std::size_t k = 0; k < operands.ops.size(); ++k) {
    const Matrix& t = operands.ops[k];
    if (!space.in_BA(t)) {
      raise(Errc::unbounded_form, e.id + ": operand " + std::to_string(k + 1) +
                                      " maps null(A) outside null(A); A-quantities are undefined");
    }
    ctx.m.push_back(space.compress_unchecked(t));
  }
  for (const Vector& v : operands.vecs) ctx.y.push_back(space.compress_vector(v));

  MarginReport r;
  r.id = e.id;
  r.tol_abs = tol.abs;
  r.tol_rel = tol.rel;
  r.fingerprint = fingerprint(e.id, operands, ctx.params);
  if (e.inapplicable) {
    r.reason = e.inapplicable(ctx);
    if (!r.reason.empty()) {
      r.status = Status::inapplicable;
      return r;
    }
  }
  Sides s = e.sides(ctx);
  r.lhs = s.lhs;
  r.rhs = s.rhs;
  r.margin = s.rhs - s.lhs;
  r.status = judge(s.lhs, s.rhs, s.equality, tol);
  r.extras = std::move(s.extras);
  return r;
}

std::uint64_t fingerprint(std::string_view id, const Operands& operands, const Params& params) {
  std::uint64_t h = 14695981039346656037ULL;
  hash_bytes(h, id.data(), id.size());
  for (const Matrix& m : operands.ops) hash_matrix(h, m);
  for (const Vector& v : operands.vecs) hash_matrix(h, v);
  for (double s : operands.scalars) hash_double(h, s);
  for (const auto& [name, value] : params) {
    hash_bytes(h, name.data(), name.size());
    hash_double(h, value);
  }
  return h;
}

std::string fingerprint_hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

json to_json(const MarginReport& r) {
  json j{{"id", r.id},
         {"lhs", r.lhs},
         {"rhs", r.rhs},
         {"margin", r.margin},
         {"status", std::string(to_string(r.status))},
         {"tol_abs", r.tol_abs},
         {"tol_rel", r.tol_rel},
         {"fingerprint", fingerprint_hex(r.fingerprint)}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (!r.extras.empty()) {
    json extras = json::object();
    for (const auto& [k, v] : r.extras) extras[k] = v;
    j["extras"] = std::move(extras);
  }
  return j;
}

}  // namespace opradius
