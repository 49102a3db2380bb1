#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "strokeminer/stroke_data.hpp"

namespace strokeminer {

// Knobs controlling how closely a synthetic subject follows the shared
// swing template. Expert-like profiles couple tightly with little noise;
// novice-like profiles drift at the shoulder and wander around the
// template. All numeric preset values are calibration targets locked by the
// generator tests; they reproduce qualitative contrasts, not measured data.
struct SkillProfile {
    SkillClass label = SkillClass::Expert;
    double swing_amplitude = 200.0;    // px, template scale at the racket top
    double noise_sigma = 2.0;          // px, per-marker wander magnitude
    double marker_coupling = 0.95;     // in [0,1], template weight per marker
    double shoulder_drift_sigma = 1.0; // px, per-step shoulder random walk
    double phase_jitter = 0.05;        // rad, per-recording swing phase shift
    std::array<int, 2> frame_count_range = {72, 96};
};

SkillProfile expert_profile();
SkillProfile intermediate_profile();  // field-wise midpoint of the other two
SkillProfile novice_profile();

// Deterministic synthetic stroke: a shared take-back-then-forward swing
// template (racket speed peaking mid-swing), markers placed along an
// arm-to-racket chain, template motion mixed with per-marker noise by
// marker_coupling, and a shoulder random walk applied to the whole chain.
// Fully determined by (profile, seed); the recording comes out raw
// (normalized=false) like ingested data.
StrokeRecording generate_recording(const SkillProfile& profile,
                                   std::uint64_t seed,
                                   std::string subject_id = {});

struct CohortSpec {
    std::vector<std::pair<SkillProfile, int>> groups;  // (profile, count)
};

// 7 expert / 3 intermediate / 5 novice.
CohortSpec paper_cohort_spec();

// Per-recording seeds are derived positionally from the master seed
// (derive_seed in rng.hpp), so generation order cannot change the cohort.
// Subject ids are "{class}_{index}" with a per-class 0-based index.
std::vector<StrokeRecording> generate_cohort(const CohortSpec& spec,
                                             std::uint64_t seed);

}  // namespace strokeminer
