//
// Copyright 2026 The LEPA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "lepa/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lepa/error.hpp"

namespace lepa {
namespace {

bool PositiveFinite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void AccuracySpec::Validate() const {
  if (!PositiveFinite(alpha)) {
    std::ostringstream msg;
    msg << "alpha must be finite and positive, got " << alpha;
    Fail(ErrorCode::kInvalidParameter, msg.str());
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    std::ostringstream msg;
    msg << "delta must lie in (0, 1), got " << delta;
    Fail(ErrorCode::kInvalidParameter, msg.str());
  }
}

void EngineConfig::Validate() const {
  if (!PositiveFinite(epsilon)) {
    Fail(ErrorCode::kInvalidParameter, "epsilon must be finite and positive");
  }
  if (!PositiveFinite(zeta)) {
    Fail(ErrorCode::kInvalidParameter, "zeta must be finite and positive");
  }
  if (!PositiveFinite(gamma)) {
    Fail(ErrorCode::kInvalidParameter, "gamma must be finite and positive");
  }
  if (!(participation_rate > 0.0 && participation_rate < 1.0)) {
    Fail(ErrorCode::kInvalidParameter,
         "participation rate D must lie in (0, 1)");
  }
  if (!PositiveFinite(reserve_price)) {
    Fail(ErrorCode::kInvalidParameter,
         "reserve price must be finite and positive");
  }
}

Bid TruthfulBid(const User& user) {
  return Bid{user.id, user.capability, user.true_sensing_cost,
             user.true_unit_privacy_cost};
}

double SlotOutcome::PaymentOf(UserId id) const {
  auto it = payments.find(id);
  return it == payments.end() ? 0.0 : it->second;
}

double RawAccuracyRequirement(const AccuracySpec& spec, double epsilon,
                              double zeta) {
  spec.Validate();
  if (!PositiveFinite(epsilon) || !PositiveFinite(zeta)) {
    Fail(ErrorCode::kInvalidParameter,
         "epsilon and zeta must be finite and positive");
  }
  return 2.0 * zeta / (epsilon * epsilon * spec.alpha * spec.alpha *
                       spec.delta);
}

int AccuracyRequirement(const AccuracySpec& spec, double epsilon,
                        double zeta) {
  const double raw = RawAccuracyRequirement(spec, epsilon, zeta);
  // Values that are integers up to rounding noise must not be bumped up.
  const double nearest = std::round(raw);
  if (std::abs(raw - nearest) <= 1e-12 * std::max(1.0, raw)) {
    return static_cast<int>(nearest);
  }
  return static_cast<int>(std::ceil(raw));
}

Task MakeTask(TaskId id, const AccuracySpec& spec, double epsilon,
              double zeta) {
  return Task{id, spec, AccuracyRequirement(spec, epsilon, zeta)};
}

double QueueUpdate(double queue, bool selected, double participation_rate) {
  return std::max(queue - (selected ? 1.0 : 0.0), 0.0) + participation_rate;
}

double UserUtility(double payment, const User& user, double epsilon,
                   bool selected) {
  if (!selected) return 0.0;
  return payment - user.true_sensing_cost -
         user.true_unit_privacy_cost * epsilon;
}

double TotalPayment(const SlotOutcome& outcome) {
  double total = 0.0;
  for (const auto& [id, payment] : outcome.payments) total += payment;
  return total;
}

}  // namespace lepa
