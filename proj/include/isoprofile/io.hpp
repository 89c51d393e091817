#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isoprofile/geometry.hpp"
#include "isoprofile/necks.hpp"
#include "isoprofile/profile.hpp"
#include "isoprofile/tv.hpp"

namespace isoprofile {

/// Unreadable files and malformed text.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PolygonFormat { Wkt, GeoJson, CsvVertices };

const char* to_string(PolygonFormat f);
std::optional<PolygonFormat> format_from_string(const std::string& name);
/// .wkt, .geojson/.json, .csv; nullopt otherwise.
std::optional<PolygonFormat> format_from_path(const std::filesystem::path& path);

/// Single hole-free simple polygon, counter-clockwise, closing vertex and
/// repeated consecutive vertices removed. Throws StructuralError with a
/// message starting "not simple", "holes unsupported" or "multipolygon
/// unsupported", and InputError on parse failures.
Region parse_polygon(const std::string& text, PolygonFormat format);
/// The same cleanup and checks for a ring given in memory.
Region polygon_from_ring(Ring ring);
Region load_polygon(const std::filesystem::path& path, std::optional<PolygonFormat> format = std::nullopt,
                    bool normalize_area = false);

/// Scales about the origin to area 1.
Region normalized_area(const Region& r);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

/// One "x,y" line per vertex of the first outer ring.
void write_csv_vertices(const Region& r, std::ostream& out);
void write_wkt(const Region& r, std::ostream& out);

void write_profile_csv(const ProfileBound& bound, std::ostream& out);
void write_tv_study_csv(const std::vector<TVStudyRow>& rows, std::ostream& out);

struct EventLines {
    double max_inscribed_t = 0.0;
    std::optional<double> minimal_neck_t;
    std::optional<double> conservatively_tight_t;
    double max_area_t = 0.0;
};

/// pi inr^2, t_high_tight and t_low_tight when necks exist, area.
EventLines event_lines(const TightnessReport& rep);

struct PlotCurve {
    std::string label;
    ProfileBound bound;
};

/// SVG with t horizontal and p vertical, one styled polyline per curve and a
/// dashed vertical line (class "event") per event. Throws ParameterError when
/// every curve is empty.
void emit_plot(const std::vector<PlotCurve>& curves, const std::vector<EventLines>& events, std::ostream& out);

}  // namespace isoprofile
