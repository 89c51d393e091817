#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isoprofile/io.hpp"
#include "isoprofile/medial_axis.hpp"
#include "isoprofile/necks.hpp"
#include "isoprofile/profile.hpp"
#include "isoprofile/tv.hpp"

namespace isoprofile {

/// Per-field overrides of default_params.
struct ParamOverrides {
    std::optional<double> d_c;
    std::optional<double> r_l;
    std::optional<double> d_x;
    std::optional<double> s_max;
    std::optional<double> r_c;
    std::optional<int> n_open;

    AlgorithmParams apply(AlgorithmParams p) const;
};

struct RunConfig {
    std::filesystem::path input;
    std::optional<PolygonFormat> format;
    ParamOverrides params;
    std::filesystem::path out_dir = ".";
    bool emit_snapshots = false;
    bool emit_plot = false;
    bool run_opening = true;
    bool normalize_area = false;
    std::vector<std::size_t> tv_nys;  ///< empty: no TV study
};

struct Analysis {
    Region omega;
    std::shared_ptr<const MedialAxis> axis;
    MedialAxisGraph graph;
    NeckSet necks;
    CircleSummary2 circle2;
    AlgorithmParams params;
    TightnessReport report;
    ProfileBound prefix;
    ProfileBound medial;
    ProfileBound opening;
    ProfileBound combined;
    std::vector<Snapshot> snapshots;
    std::vector<TVStudyRow> tv;
    std::map<std::string, double> timings;  ///< seconds per stage
};

/// Every stage of the profile computation on an already loaded domain.
Analysis analyze(const Region& omega, const RunConfig& cfg);

/// report.json body: the tightness report, the neck set, params and event
/// lines. Infinite values are written as null.
std::string report_json(const Analysis& a);
std::string necks_json(const NeckSet& ns);
std::string timings_json(const Analysis& a);

/// Writes profile.csv, report.json, timings.json and, per flags, plot.svg,
/// tv_study.csv and snapshots/.
void write_artifacts(const Analysis& a, const RunConfig& cfg);

/// load_polygon, analyze, write_artifacts.
Analysis run_pipeline(const RunConfig& cfg);

}  // namespace isoprofile
