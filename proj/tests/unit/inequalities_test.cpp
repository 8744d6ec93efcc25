#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "opradius/ensembles.hpp"
#include "opradius/inequalities.hpp"
#include "test_util.hpp"

using namespace opradius;
using testutil::code_of;
using testutil::mat;

namespace {

const Matrix kTri = mat({{1, -1}, {-1, 2}});
const double kPhi = std::numbers::phi;

TEST(Catalog, ContainsStableIds) {
  const auto& cat = list_catalog();
  EXPECT_GE(cat.size(), 28u);
  std::set<std::string> ids;
  for (const auto& e : cat) {
    EXPECT_TRUE(ids.insert(e.id).second) << "duplicate id " << e.id;
    EXPECT_FALSE(e.statement.empty());
    EXPECT_FALSE(e.source.empty());
    EXPECT_TRUE(e.sides != nullptr);
  }
  for (const char* id : {"QA1", "RA1.stated", "RA1.proof", "TD1.stated", "CSTAR", "NORM-EQUIV",
                         "POWER", "PROD1", "PROD2", "PROD4", "SUBMULT", "RB1", "CT1", "QA5",
                         "GN.plus", "GN.minus", "MM1.plus", "MM2", "XY2", "ST1", "ST2", "BUZANO",
                         "MD1", "MD2", "MD3", "RA2", "AG.weighted", "AG.young", "MRQ1.stated",
                         "FINAL1", "RAN", "RA6", "RA7", "RA8", "RT1", "RT2", "RT3", "TT1", "TT2"}) {
    EXPECT_EQ(ids.count(id), 1u) << id;
  }
  EXPECT_EQ(find_entry("RA1.proof").variant, "proof-consistent");
  EXPECT_TRUE(find_entry("RA1.stated").flagged);
  EXPECT_TRUE(find_entry("TD1.stated").flagged);
  EXPECT_FALSE(find_entry("QA1").flagged);
  EXPECT_EQ(code_of([] { find_entry("NOPE"); }), Errc::unknown_entry);
}

TEST(Judge, ToleranceBand) {
  const Tolerance t;
  EXPECT_EQ(judge(1.0, 1.0, false, t), Status::satisfied);
  EXPECT_EQ(judge(1.0 + 5e-8, 1.0, false, t), Status::satisfied);
  EXPECT_EQ(judge(1.0 + 2e-7, 1.0, false, t), Status::violated);
  EXPECT_EQ(judge(0.5, 1.0, false, t), Status::satisfied);
  EXPECT_EQ(judge(0.5, 1.0, true, t), Status::violated);
  EXPECT_EQ(judge(1e-10, 0.0, false, t), Status::satisfied);
  EXPECT_EQ(judge(2e-9, 0.0, false, t), Status::violated);
}

TEST(Evaluate, CommutatorExampleUnderTheDefinitions) {
  const SemiHilbertSpace s = SemiHilbertSpace::build(kTri);
  const MarginReport r = evaluate("QA1", s, Operands{{mat({{1, 0}, {1, 0}}), mat({{1, 1}, {0, 0}})}, {}, {}});
  EXPECT_EQ(r.status, Status::satisfied);
  EXPECT_NEAR(r.lhs, 3.5, 1e-10);
  EXPECT_NEAR(r.rhs, 2.0 * std::numbers::sqrt2 * std::numbers::sqrt2 * kPhi, 1e-10);
  EXPECT_NEAR(r.margin, r.rhs - r.lhs, 1e-15);
  EXPECT_EQ(r.tol_abs, 1e-9);
  EXPECT_EQ(r.tol_rel, 1e-7);
}

TEST(Evaluate, InterpolatedBuzanoExampleUnderTheDefinitions) {
  const SemiHilbertSpace s = SemiHilbertSpace::build(kTri);
  const MarginReport r =
      evaluate("MD3", s, Operands{{mat({{1, 1}, {0, 0}})}, {}, {}}, Params{{"alpha", 0.5}, {"r", 1.0}});
  EXPECT_EQ(r.status, Status::satisfied);
  EXPECT_NEAR(r.lhs, kPhi * kPhi, 1e-10);
  EXPECT_NEAR(r.rhs, 0.375 * (5.0 + std::sqrt(5.0)) + 0.25 * kPhi, 1e-10);
}

TEST(Evaluate, CartesianVectorExampleIsNormalized) {
  const SemiHilbertSpace s = SemiHilbertSpace::build(kTri);
  Vector x(2);
  x << (2.0 - std::sqrt(3.0)) / 2.0, (1.0 - std::sqrt(3.0)) / 2.0;
  const MarginReport r = evaluate("QA5", s, Operands{{0.5 * mat({{1, 0}, {1, 1}})}, {x}, {}});
  EXPECT_EQ(r.status, Status::satisfied);
  // w_A(T) = 1, so only x is rescaled: (0.0469555 + 0.4129809) / 0.6196568^2.
  EXPECT_NEAR(r.lhs, (0.0469555434 + 0.4129809472) / std::pow(0.6196568375, 2), 1e-6);
  EXPECT_NEAR(r.rhs, 2.5, 1e-9);
  const MarginReport zero = evaluate("QA5", s, Operands{{0.5 * mat({{1, 0}, {1, 1}})}, {Vector::Zero(2)}, {}});
  EXPECT_EQ(zero.status, Status::inapplicable);
  EXPECT_FALSE(zero.reason.empty());
}

TEST(Evaluate, IdentityOnNormEquivalenceSitsOnTheUpperBranch) {
  const SemiHilbertSpace s = SemiHilbertSpace::build(Matrix::Identity(2, 2));
  const MarginReport r = evaluate("NORM-EQUIV", s, Operands{{Matrix::Identity(2, 2)}, {}, {}});
  EXPECT_EQ(r.status, Status::satisfied);
  EXPECT_NEAR(r.lhs, 1.0, 1e-14);
  EXPECT_NEAR(r.rhs, 1.0, 1e-14);
}

TEST(Evaluate, SignatureParametersAndMembership) {
  const SemiHilbertSpace s = SemiHilbertSpace::build(kTri);
  const Matrix t = mat({{1, 0}, {1, 0}});
  EXPECT_EQ(code_of([&] { evaluate("QA1", s, Operands{{t}, {}, {}}); }), Errc::signature_mismatch);
  EXPECT_EQ(code_of([&] { evaluate("RA1.proof", s, Operands{{}, {}, {}}); }), Errc::signature_mismatch);
  EXPECT_EQ(code_of([&] { evaluate("MD3", s, Operands{{t}, {}, {}}, Params{{"alpha", 2.0}}); }),
            Errc::bad_parameter);
  EXPECT_EQ(code_of([&] { evaluate("MD3", s, Operands{{t}, {}, {}}, Params{{"beta", 0.1}}); }),
            Errc::bad_parameter);
  EXPECT_EQ(code_of([&] { evaluate("POWER", s, Operands{{t}, {}, {}}, Params{{"n", 2.5}}); }),
            Errc::bad_parameter);
  EXPECT_EQ(code_of([&] { evaluate("NOPE", s, Operands{{t}, {}, {}}); }), Errc::unknown_entry);
  const SemiHilbertSpace pauli = SemiHilbertSpace::build(mat({{1, 0}, {0, 0}}));
  EXPECT_EQ(code_of([&] { evaluate("NORM-EQUIV", pauli, Operands{{mat({{0, 1}, {1, 0}})}, {}, {}}); }),
            Errc::unbounded_form);
}

TEST(Evaluate, HypothesesMakeEntriesInapplicable) {
  const SemiHilbertSpace s = SemiHilbertSpace::build(Matrix::Identity(2, 2));
  const Matrix a = mat({{0, 1}, {0, 0}});
  const Matrix b = mat({{0, 0}, {1, 0}});
  EXPECT_EQ(evaluate("PROD2", s, Operands{{a, b}, {}, {}}).status, Status::inapplicable);
  EXPECT_EQ(evaluate("PROD1", s, Operands{{a, a}, {}, {}}).status, Status::inapplicable);
  EXPECT_EQ(evaluate("AG.weighted", s, Operands{{}, {}, {-1.0, 2.0}}).status, Status::inapplicable);
  const Matrix id = Matrix::Identity(2, 2);
  EXPECT_EQ(evaluate("FINAL1", s, Operands{{id, id, id}, {}, {}}, Params{{"r", 1.0}}).status,
            Status::inapplicable);
  EXPECT_EQ(evaluate("FINAL1", s, Operands{{-id, id, id}, {}, {}}, Params{{"r", 2.0}}).status,
            Status::inapplicable);
}

TEST(FlaggedStatements, IdentityShiftCounterexample) {
  // X_1 = X_2 = I: lhs = 4 + 2 = 6, rhs = 2 + (1/4) ||2I + I||^2 = 4.25.
  const SemiHilbertSpace s = SemiHilbertSpace::build(Matrix::Identity(2, 2));
  const Matrix id = Matrix::Identity(2, 2);
  const MarginReport r = evaluate("TD1.stated", s, Operands{{id, id}, {}, {}});
  EXPECT_EQ(r.status, Status::violated);
  EXPECT_NEAR(r.lhs, 6.0, 1e-12);
  EXPECT_NEAR(r.rhs, 4.25, 1e-12);
  EXPECT_EQ(evaluate("TD1.proof", s, Operands{{id, id}, {}, {}}).status, Status::violated);
}

TEST(FlaggedStatements, MixedPowerCounterexample) {
  // T = S = tI, X = I, one block, r = 1, p = 2, alpha = 1: t^2 against t^4.
  const SemiHilbertSpace s = SemiHilbertSpace::build(Matrix::Identity(2, 2));
  const double t = 0.5;
  const Matrix ti = t * Matrix::Identity(2, 2);
  const Params p{{"alpha", 1.0}, {"r", 1.0}, {"p", 2.0}};
  const MarginReport r = evaluate("MRQ1.stated", s, Operands{{ti, Matrix::Identity(2, 2), ti}, {}, {}}, p);
  EXPECT_EQ(r.status, Status::violated);
  EXPECT_NEAR(r.lhs, t * t, 1e-12);
  EXPECT_NEAR(r.rhs, std::pow(t, 4), 1e-12);
  EXPECT_EQ(evaluate("MRQ1.proof", s, Operands{{ti, Matrix::Identity(2, 2), ti}, {}, {}}, p).status,
            Status::satisfied);
}

TEST(FlaggedStatements, SquaredFirstTermFailsBelowUnitScale) {
  // Scaling X_k by c multiplies the lhs by c^2 but the squared term by c^4.
  const SemiHilbertSpace s = SemiHilbertSpace::build(Matrix::Identity(2, 2));
  const Matrix x = 0.1 * Matrix::Identity(2, 2);
  const MarginReport stated = evaluate("RA1.stated", s, Operands{{x, x}, {}, {}});
  const MarginReport proof = evaluate("RA1.proof", s, Operands{{x, x}, {}, {}});
  EXPECT_EQ(stated.status, Status::violated);
  EXPECT_EQ(proof.status, Status::satisfied);
  EXPECT_NEAR(proof.lhs, 0.04, 1e-14);
  EXPECT_NEAR(proof.rhs, 0.04, 1e-14);
}

TEST(Fingerprint, StableAndSensitive) {
  const Operands o{{mat({{1, 2}, {3, 4}})}, {}, {}};
  const std::uint64_t h = fingerprint("CSTAR", o, {});
  EXPECT_EQ(h, fingerprint("CSTAR", o, {}));
  EXPECT_NE(h, fingerprint("NORM-EQUIV", o, {}));
  Operands o2 = o;
  o2.ops[0](0, 0) = cplx(1.0 + 1e-15, 0.0);
  EXPECT_NE(h, fingerprint("CSTAR", o2, {}));
  Operands z1{{mat({{0.0, 0}, {0, 0}})}, {}, {}};
  Operands z2{{mat({{-0.0, 0}, {0, 0}})}, {}, {}};
  EXPECT_EQ(fingerprint("CSTAR", z1, {}), fingerprint("CSTAR", z2, {}));
  EXPECT_NE(fingerprint("MD3", o, Params{{"alpha", 0.25}}), fingerprint("MD3", o, Params{{"alpha", 0.5}}));
  EXPECT_EQ(fingerprint_hex(0x1a).size(), 16u);
}

TEST(MarginReportJson, Fields) {
  const SemiHilbertSpace s = SemiHilbertSpace::build(Matrix::Identity(2, 2));
  const MarginReport r = evaluate("CSTAR", s, Operands{{mat({{1, 2}, {3, 4}})}, {}, {}});
  const json j = to_json(r);
  for (const char* k : {"id", "lhs", "rhs", "margin", "status", "tol_abs", "tol_rel", "fingerprint"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_EQ(j["status"], "Satisfied");
  EXPECT_EQ(j["fingerprint"], fingerprint_hex(r.fingerprint));
}

TEST(Evaluate, EveryEntryRunsOnItsOwnSignature) {
  const SemiHilbertSpace s = SemiHilbertSpace::build(random_psd(4, 3, 5));
  for (const auto& e : list_catalog()) {
    Operands o;
    const Signature& sig = e.signature;
    const int blocks = sig.group == 0 ? 0 : std::max(1, sig.min_blocks);
    for (int k = 0; k < sig.group * blocks; ++k) {
      o.ops.push_back(random_a_positive(s, static_cast<std::uint64_t>(k + 1)));
    }
    for (int k = 0; k < sig.vectors; ++k) o.vecs.push_back(random_vector(4, static_cast<std::uint64_t>(k + 7)));
    for (int k = 0; k < sig.scalars; ++k) o.scalars.push_back(1.5 + k);
    const MarginReport r = evaluate(e.id, s, o);
    EXPECT_TRUE(std::isfinite(r.lhs)) << e.id;
    EXPECT_TRUE(std::isfinite(r.rhs)) << e.id;
    if (!e.flagged) EXPECT_NE(r.status, Status::violated) << e.id;
  }
}

}  // namespace
