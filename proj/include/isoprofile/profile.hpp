#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "isoprofile/geometry.hpp"
#include "isoprofile/medial_axis.hpp"
#include "isoprofile/necks.hpp"

namespace isoprofile {

enum class SampleSource { MedialAxis, Opening, OpeningRepair, AnalyticPrefix };

const char* to_string(SampleSource source);
std::optional<SampleSource> source_from_string(const std::string& name);

struct ProfileSample {
    double t = 0.0;
    double p = 0.0;
    SampleSource source = SampleSource::MedialAxis;
    double radius = NAN;  ///< last absorbed node radius or opening radius
    std::optional<std::size_t> shape_ref;
};

struct ProfileBound {
    std::vector<ProfileSample> samples;  ///< strictly increasing t

    bool empty() const { return samples.empty(); }
    double t_min() const { return samples.front().t; }
    double t_max() const { return samples.back().t; }
    /// Piecewise-linear value; nullopt outside [t_min, t_max].
    std::optional<double> value_at(double t) const;
};

struct AlgorithmParams {
    double d_c = 0.5;
    double r_l = 0.05;
    double d_x = 0.01;
    double s_max = 0.02;
    double r_c = 0.005;
    int n_open = 100;

    void validate() const;
    LinearizationParams lin() const { return {d_x}; }
    DiscretizationParams discretization() const { return {d_c, r_l, s_max}; }
};

/// Scale-relative defaults: d_c = 0.5/inr, r_l just below r_n (0.05 inr when
/// neck-free), d_x = 0.005 sqrt(area), s_max = 0.02 inr, r_c = d_x / 2.
AlgorithmParams default_params(const Region& omega, double inr, const NeckSet& necks);

struct Snapshot {
    std::size_t id = 0;
    double t = 0.0;
    double p = 0.0;
    Region region;
};

struct IPBoundResult {
    ProfileBound bound;
    std::vector<Snapshot> snapshots;
};

/// remove_holes, close by r_c, intersect with omega.
Region post_process(const Region& f, double r_c, const Region& omega, const LinearizationParams& lin);

/// Greedy traversal of the graph from its maximal node. Edge pieces are
/// unioned in batches of eight absorptions; after a batch a sample is emitted
/// when t grew by area(omega)/2000. Crossing a neck radius and the end always
/// emit. Samples that would break strict monotonicity are skipped.
IPBoundResult compute_ip_bound(const Region& omega, const MedialAxisGraph& mag, const AlgorithmParams& params,
                               const NeckSet& necks, bool keep_snapshots = false);
IPBoundResult compute_ip_bound(const Region& omega, const AlgorithmParams& params, bool keep_snapshots = false);

/// Openings at n_open radii in [0, inr] with discontinuity repair.
ProfileBound opening_bound(const Region& omega, const AlgorithmParams& params);

/// Pointwise minimum: the lower input's own samples plus crossing points.
ProfileBound combine_bounds(const ProfileBound& a, const ProfileBound& b);

/// p = 2 sqrt(pi t) on [0, pi inr^2].
ProfileBound analytic_prefix(double inr, std::size_t count = 64);

/// Keeps the samples whose p does not exceed any later p; sorts and dedups t.
ProfileBound monotone_filter(std::vector<ProfileSample> samples);

struct TightnessReport {
    double r_n = INFINITY;
    double r_m = INFINITY;
    double inr = 0.0;
    double inr2 = 0.0;
    double r_t = INFINITY;        ///< max(r_m, inr2 / 2)
    double r_t_inr = INFINITY;    ///< max(r_m, inr / 2)
    double t_low_tight = 0.0;
    double t_low_tight_inr = 0.0;
    double t_high_tight = 0.0;
    double area = 0.0;
    bool thick_neck = true;
    bool tight_everywhere = true;
};

TightnessReport tightness_report(const Region& omega, const MedialAxisGraph& mag, const NeckSet& ns,
                                 const CircleSummary2& c2, const AlgorithmParams& params);

}  // namespace isoprofile
