#include "strokeminer/synthgen.hpp"

#include <cmath>
#include <numbers>

#include "strokeminer/rng.hpp"

namespace strokeminer {

namespace {

// Marker chain: rest offsets from the shoulder (px) and how strongly each
// marker follows the swing template. Offsets sketch a right arm holding a
// racket as seen by the paper's side-on camera; coupling grows toward the
// racket top so M9 moves the most, echoing the reported x-range ordering.
struct ChainPoint {
    double dx, dy;
    double coupling_scale;
};

constexpr std::array<ChainPoint, kMarkerCount> kChain = {{
    {0.0, 0.0, 0.35},      // M1 acromioclavicular joint
    {10.0, -4.0, 0.38},    // M2 acromiale
    {34.0, 36.0, 0.55},    // M3 radiale
    {56.0, 70.0, 0.75},    // M4 ulna
    {76.0, 100.0, 0.85},   // M5 stylium
    {84.0, 103.0, 0.87},   // M6 stylium ulnae
    {100.0, 122.0, 0.94},  // M7 racket inner side
    {116.0, 138.0, 0.97},  // M8 racket outer side
    {130.0, 150.0, 1.0},   // M9 racket top
}};

constexpr double kShoulderBaseX = 170.0;
constexpr double kShoulderBaseY = 230.0;

// Take-back-then-forward swing template over normalized time u in [0, 1]:
// a brief backward pull blends into the forward stroke, so the speed
// profile rises to its maximum strictly inside the swing (the impact) and
// decays through the follow-through.
double swing_x(double u, double phase) {
    double a = std::numbers::pi * u + phase;
    return (1.0 - std::cos(a)) / 2.0 - 0.35 * std::sin(a) * (1.0 - u);
}

double swing_y(double u, double phase) {
    return 0.35 * std::sin(std::numbers::pi * u + phase);
}

}  // namespace

SkillProfile expert_profile() {
    SkillProfile p;
    p.label = SkillClass::Expert;
    p.swing_amplitude = 200.0;
    p.noise_sigma = 2.0;
    p.marker_coupling = 0.95;
    p.shoulder_drift_sigma = 1.0;
    p.phase_jitter = 0.05;
    p.frame_count_range = {72, 96};
    return p;
}

SkillProfile novice_profile() {
    SkillProfile p;
    p.label = SkillClass::Novice;
    p.swing_amplitude = 200.0;
    p.noise_sigma = 25.0;
    p.marker_coupling = 0.3;
    p.shoulder_drift_sigma = 15.0;
    p.phase_jitter = 0.5;
    p.frame_count_range = {48, 112};
    return p;
}

SkillProfile intermediate_profile() {
    SkillProfile expert = expert_profile();
    SkillProfile novice = novice_profile();
    SkillProfile p;
    p.label = SkillClass::Intermediate;
    p.swing_amplitude = (expert.swing_amplitude + novice.swing_amplitude) / 2.0;
    p.noise_sigma = (expert.noise_sigma + novice.noise_sigma) / 2.0;
    p.marker_coupling = (expert.marker_coupling + novice.marker_coupling) / 2.0;
    p.shoulder_drift_sigma =
        (expert.shoulder_drift_sigma + novice.shoulder_drift_sigma) / 2.0;
    p.phase_jitter = (expert.phase_jitter + novice.phase_jitter) / 2.0;
    p.frame_count_range = {
        (expert.frame_count_range[0] + novice.frame_count_range[0]) / 2,
        (expert.frame_count_range[1] + novice.frame_count_range[1]) / 2};
    return p;
}

namespace {

// Per-marker wander: a random trigonometric polynomial over normalized
// time. Independent draws of such curves have near-zero chance correlation
// (unlike random walks, whose pairwise correlations are notoriously
// fat-tailed), which is what keeps distinct novice recordings decorrelated.
constexpr int kWanderHarmonics = 24;

struct WanderCurve {
    std::array<double, kWanderHarmonics> cos_coeff{};
    std::array<double, kWanderHarmonics> sin_coeff{};

    static WanderCurve draw(SplitMix64& rng, double sigma) {
        WanderCurve curve;
        double scale = sigma / std::sqrt(static_cast<double>(kWanderHarmonics));
        for (int k = 0; k < kWanderHarmonics; ++k) {
            curve.cos_coeff[k] = scale * rng.next_gaussian();
            curve.sin_coeff[k] = scale * rng.next_gaussian();
        }
        return curve;
    }

    double at(double u) const {
        double w = 0.0;
        for (int k = 0; k < kWanderHarmonics; ++k) {
            double arg = 2.0 * std::numbers::pi * (k + 1) * u;
            w += cos_coeff[k] * std::cos(arg) + sin_coeff[k] * std::sin(arg);
        }
        return w;
    }
};

}  // namespace

StrokeRecording generate_recording(const SkillProfile& profile, std::uint64_t seed,
                                   std::string subject_id) {
    SplitMix64 rng(seed);

    // Draw order is fixed and part of the determinism contract: frame
    // count, phase, the wander curves per marker (x then y, marker order),
    // then per frame the shoulder walk step (x, y).
    const int span = profile.frame_count_range[1] - profile.frame_count_range[0];
    const int frames = profile.frame_count_range[0] +
                       static_cast<int>(span > 0 ? rng.next_below(
                           static_cast<std::uint64_t>(span + 1)) : 0);
    const double phase = (rng.next_unit() * 2.0 - 1.0) * profile.phase_jitter;

    const double wander_sigma = 2.0 * profile.noise_sigma;
    std::array<std::pair<WanderCurve, WanderCurve>, kMarkerCount> wander;
    for (int m = 0; m < kMarkerCount; ++m) {
        wander[m].first = WanderCurve::draw(rng, wander_sigma);
        wander[m].second = WanderCurve::draw(rng, wander_sigma);
    }

    // The shoulder walk shifts the whole chain; its per-step scale is
    // normalized by the frame count so the total excursion tracks
    // shoulder_drift_sigma independent of the drawn length.
    const double walk_step =
        profile.shoulder_drift_sigma / std::sqrt(static_cast<double>(frames));

    StrokeRecording rec;
    rec.subject_id = subject_id.empty() ? "synth_" + std::to_string(seed)
                                        : std::move(subject_id);
    rec.skill = profile.label;
    rec.fps = 90.0;
    rec.resolution = {512, 512};
    rec.normalized = false;
    rec.frames.reserve(static_cast<std::size_t>(frames));

    double shoulder_x = 0.0, shoulder_y = 0.0;
    for (int t = 0; t < frames; ++t) {
        shoulder_x += walk_step * rng.next_gaussian();
        shoulder_y += walk_step * rng.next_gaussian();

        double u = frames > 1 ? static_cast<double>(t) / (frames - 1) : 0.0;
        double gx = profile.swing_amplitude * swing_x(u, phase);
        double gy = profile.swing_amplitude * swing_y(u, phase);

        Frame frame;
        frame.index = t;
        for (int m = 0; m < kMarkerCount; ++m) {
            double follow = profile.marker_coupling * kChain[m].coupling_scale;
            frame.positions[m].x = kShoulderBaseX + kChain[m].dx + follow * gx +
                                   wander[m].first.at(u) + shoulder_x;
            frame.positions[m].y = kShoulderBaseY + kChain[m].dy + follow * gy +
                                   wander[m].second.at(u) + shoulder_y;
        }
        rec.frames.push_back(frame);
    }
    return rec;
}

CohortSpec paper_cohort_spec() {
    CohortSpec spec;
    spec.groups.emplace_back(expert_profile(), 7);
    spec.groups.emplace_back(intermediate_profile(), 3);
    spec.groups.emplace_back(novice_profile(), 5);
    return spec;
}

std::vector<StrokeRecording> generate_cohort(const CohortSpec& spec,
                                             std::uint64_t seed) {
    std::vector<StrokeRecording> cohort;
    std::uint64_t position = 0;
    for (const auto& [profile, count] : spec.groups) {
        for (int i = 0; i < count; ++i, ++position) {
            std::string subject = std::string(to_string(profile.label)) + "_" +
                                  std::to_string(i);
            cohort.push_back(
                generate_recording(profile, derive_seed(seed, position), subject));
        }
    }
    return cohort;
}

}  // namespace strokeminer
