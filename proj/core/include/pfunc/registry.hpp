#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfunc/criterion.hpp"
#include "pfunc/funcalg.hpp"
#include "pfunc/higher.hpp"
#include "pfunc/paper_examples.hpp"
#include "pfunc/verify.hpp"

namespace pfunc {

/// Where a job's u comes from.
struct FieldSource {
  enum class Kind {
    Solve,           ///< Newton solve of the case equation on the grid
    Profile,         ///< RK4 profile of the case equation
    Kink,            ///< analytic kink sampled as a profile
    KinkField,       ///< tanh(x / sqrt 2) on the grid
    Manufactured,    ///< closed-form manufactured solution
    Counterexample,  ///< u = ln(2 / x^2) on [1, 4], solves u'' = e^u
    Bump,            ///< -(x^2 + y^2)
    Constant,        ///< u = value
    Linear,          ///< u = x
  };
  enum class Boundary { Constant, LinearX, ProfileX };

  Kind kind = Kind::Solve;
  // grid box and spacing
  double xlo = 0.0;
  double xhi = 1.0;
  double ylo = 0.0;
  double yhi = 1.0;
  double h = 1.0 / 64.0;
  // boundary data for Solve
  Boundary bc = Boundary::Constant;
  double value = 1.0;
  // profile data (also the trace for Boundary::ProfileX)
  double u0 = 0.0;
  double v0 = 0.0;
  double x0 = 0.0;
  double spanLo = -5.0;
  double spanHi = 5.0;
  double profileH = 1e-3;
  std::string manufacturedId;
  double scale = 1.0;  ///< multiplies closed-form fields

  [[nodiscard]] bool is_profile() const {
    return kind == Kind::Profile || kind == Kind::Kink || kind == Kind::Counterexample;
  }
  [[nodiscard]] Grid2 grid() const;
};

std::string to_string(FieldSource::Kind kind);

struct Prop73Data {
  Fn1 a;
  Fn1 b;
  Fn1 A;
  Fn1 B;
};

/// One addressable entry: an equation, optionally a P-function, default field
/// source and the data the higher-order and Liouville checks need.
struct Case {
  std::string id;
  std::string summary;
  std::optional<EquationSpec> equation;
  std::optional<PFunctionSpec> pfunction;
  CriterionRoute route = CriterionRoute::External;
  Rect criterionRect{{-2.0, 2.0}, {0.0, 2.0}};
  FieldSource field;
  std::optional<Prop73Data> prop73;
  std::optional<Fn3> F3;
  double c76 = 1.0;
  std::optional<Fn1> liouvilleGamma;
  std::optional<Fn1> nonexistenceG;
  std::optional<Fn1> gradPg;
  GradFunction maG = GradFunction::squared_norm();
  std::optional<std::vector<double>> meanValueCentre;
};

/// Sorted by id.
const std::vector<Case>& registry_cases();
/// Throws UnknownId.
const Case& registry_case(const std::string& id);

struct CheckInfo {
  std::string id;
  std::string summary;
};
/// Sorted by id.
const std::vector<CheckInfo>& registry_checks();
bool is_known_check(const std::string& id);

/// Sorted listing of cases and checks, one per line.
std::string list_registry();

/// Kink of the Allen-Cahn equation sampled on [lo, hi] with step h.
Profile1 kink_profile(double lo, double hi, double h);
/// u = ln(2 / x^2) on [1, 4].
Profile1 counterexample_profile(double h);

}  // namespace pfunc
