#pragma once

#include <variant>

#include "eznav/ez_pursuit.hpp"
#include "eznav/ez_turret.hpp"

namespace eznav {

using Threat = std::variant<PursuerThreat, TurretThreat>;

inline const Point2& threat_position(const Threat& t) {
  return std::visit([](const auto& th) -> const Point2& { return th.position; }, t);
}

inline void validate_threat(const Threat& t) {
  std::visit([](const auto& th) { th.validate(); }, t);
}

// Signed clearance for either threat kind: positive outside the EZ.
double threat_clearance(const Point2& agent_pos, double agent_heading, const Threat& threat);

// Fraction f in [0, 1] minimising the clearance at a + f (b - a) for a
// fixed heading.
double segment_min_fraction(const Point2& a, const Point2& b, double heading, const Threat& threat);

// Engagement oracle for either threat kind.
bool threat_oracle_captures(const Point2& agent_pos, double agent_heading, const Threat& threat);

}  // namespace eznav
