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

#include "lepa/suites.hpp"

#include "lepa/error.hpp"
#include "lepa/privacy.hpp"

namespace lepa::suites {

CertifyReport RunCertification(
    const CertifyOptions& options,
    const std::function<void(const CertificateRecord&)>& sink) {
  if (options.instances < 0 || options.max_n < 2 || options.max_k < 1 ||
      options.misreports < 0) {
    Fail(ErrorCode::kInvalidParameter, "invalid certification options");
  }
  if (options.max_n > oracle::kMaxEnumerationUsers) {
    Fail(ErrorCode::kSizeLimit, "max-n exceeds the exhaustive search limit");
  }
  oracle::InstanceOptions shape;
  shape.max_n = options.max_n;
  shape.max_k = options.max_k;

  CertifyReport report;
  for (int idx = 0; idx < options.instances; ++idx) {
    CertificateRecord record;
    record.index = idx;
    record.instance_seed = MixSeed(options.seed, static_cast<std::uint64_t>(idx));
    Rng rng(record.instance_seed);
    const auction::SlotInstance instance = oracle::RandomInstance(shape, rng);
    ++report.instances;

    try {
      record.certificate = oracle::CertifyBound(instance);
      ++report.certified;
      if (!record.certificate.passed) ++report.bound_violations;
      if (!record.certificate.lemma_holds) ++report.lemma_violations;
      if (!record.certificate.greedy_bound_holds) {
        ++report.greedy_bound_violations;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateRatio) throw;
      record.degenerate = true;
      record.degenerate_reason = e.what();
      ++report.degenerate;
    }

    const SlotOutcome truthful = auction::SelectAndPay(instance);
    for (const Bid& bid : instance.bids) {
      if (!truthful.IsWinner(bid.user_id)) continue;
      const double cost = bid.DeclaredCost(instance.config.epsilon);
      if (truthful.PaymentOf(bid.user_id) < cost - 1e-12) ++record.ir_violations;
    }
    report.ir_violations += record.ir_violations;

    if (options.misreports > 0) {
      for (const Bid& bid : instance.bids) {
        const auto misreports =
            oracle::SampleMisreports(bid, options.misreports, rng);
        report.truth_probes += options.misreports;
        record.truth_violations += static_cast<int>(
            oracle::TruthfulnessProbe(instance, bid.user_id, misreports).size());
      }
      report.truth_violations += record.truth_violations;
    }

    record.passed = (record.degenerate || (record.certificate.passed &&
                                           record.certificate.lemma_holds)) &&
                    record.truth_violations == 0 && record.ir_violations == 0;
    if (sink) sink(record);
  }
  return report;
}

AccuracyCell RunAccuracyCell(double alpha, double delta, double epsilon,
                             double zeta, std::int64_t trials,
                             std::uint64_t seed) {
  AccuracyCell cell;
  cell.alpha = alpha;
  cell.delta = delta;
  cell.epsilon = epsilon;
  cell.zeta = zeta;
  cell.trials = trials;
  const AccuracySpec spec{alpha, delta};
  EngineConfig config;
  config.epsilon = epsilon;
  config.zeta = zeta;
  cell.requirement = AccuracyRequirement(spec, epsilon, zeta);
  Rng rng(seed);
  cell.frequency =
      privacy::EmpiricalAccuracy(cell.requirement, spec, config, trials, rng);
  cell.passed = cell.frequency <= delta;
  return cell;
}

std::vector<AccuracyCell> RunAccuracyGrid(double zeta, std::int64_t trials,
                                          std::uint64_t seed) {
  std::vector<AccuracyCell> cells;
  std::uint64_t stream = 0;
  for (double alpha : {1.0, 1.25, 1.5, 1.75, 2.0}) {
    for (double delta : {0.1, 0.2}) {
      for (double epsilon : {0.5, 2.0}) {
        cells.push_back(RunAccuracyCell(alpha, delta, epsilon, zeta, trials,
                                        MixSeed(seed, stream++)));
      }
    }
  }
  return cells;
}

}  // namespace lepa::suites
