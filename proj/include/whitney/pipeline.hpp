#pragma once

#include <string>
#include <vector>

#include "whitney/graph.hpp"
#include "whitney/io.hpp"
#include "whitney/iso.hpp"
#include "whitney/ops.hpp"
#include "whitney/weak_iso.hpp"

namespace whitney {

struct RigidityResult {
  bool ok = false;
  // "many-ended" for weakly 3-connected inputs with at least three rays per component,
  // "ray-free" for strongly 3-connected finite inputs.
  std::string route;
  VertexMap psi;
  std::size_t classes = 0;
  std::size_t wedges_checked = 0;
  std::vector<std::string> failures;  // theorem violations; empty on valid inputs
};

// Requires phi to pass check_weak_isomorphism and the source to be either weakly 3-connected
// with at least three rays per component and no loops, or ray-free, connected and strongly
// 3-connected. Otherwise PreconditionError naming the failed hypothesis.
RigidityResult rigidity_check(const EdgeBijection& phi, const CheckOptions& opt = {});

struct ComponentStage {
  std::string component;  // smallest vertex of the component after the splits
  std::size_t rays = 0;
  std::string route;  // "finite", "one-ended", "two-ended" or "bananas"
  std::vector<WhitneyOp> ops;
  std::vector<std::string> bananas;  // banana ids whose boundary had to be flipped
};

struct PipelineResult {
  OpSequence source_splits;  // block decomposition of the source
  OpSequence target_splits;  // block decomposition of the target, recorded on the target
  std::vector<ComponentStage> components;
  std::vector<WhitneyOp> joins;  // inverse of target_splits, renamed onto the current graph
  OpSequence sequence;           // everything above, starting at the source
  VertexMap final_isomorphism;   // final graph of `sequence` onto the target
  bool verified = false;
};

// Requires phi to pass check_weak_isomorphism (PreconditionError otherwise). Stage failures
// throw TheoremViolation with the stage name in the message.
PipelineResult implement_weak_iso(const EdgeBijection& phi, const CheckOptions& opt = {});

Json rigidity_to_json(const RigidityResult& r);
Json pipeline_to_json(const PipelineResult& r);

}  // namespace whitney
