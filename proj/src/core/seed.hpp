#pragma once
#include <cmath>
#include <string>
#include "errors.hpp"

namespace sglab {

// Seed decay profile Q(r). The scale-u kernel is Q_u(x,y) = Q(e^u |x-y|);
// profiles are normalized so Q(0) = 1 and the cumulative kernel satisfies
// K_t(x,x) = t exactly.
enum class SeedKind { Gaussian, Cauchy, Constant };

struct SeedProfile {
  SeedKind kind = SeedKind::Gaussian;

  double value(double r) const {
    switch (kind) {
      case SeedKind::Gaussian: return std::exp(-0.5 * r * r);
      case SeedKind::Cauchy: return 1.0 / (1.0 + r * r);
      case SeedKind::Constant: return 1.0;
    }
    return 0.0;
  }

  // whether Q decays at infinity (the constant profile deliberately does not;
  // it exists to exercise the assumption validator)
  bool decays() const { return kind != SeedKind::Constant; }

  std::string name() const {
    switch (kind) {
      case SeedKind::Gaussian: return "gaussian";
      case SeedKind::Cauchy: return "cauchy";
      case SeedKind::Constant: return "constant";
    }
    return "?";
  }

  static SeedProfile parse(const std::string& s) {
    if (s == "gaussian") return {SeedKind::Gaussian};
    if (s == "cauchy") return {SeedKind::Cauchy};
    if (s == "constant") return {SeedKind::Constant};
    throw ConfigError("unknown seed profile: " + s);
  }
};

}  // namespace sglab
