#include "isoprofile/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <boost/geometry.hpp>
#include <nlohmann/json.hpp>

namespace isoprofile {
namespace {

namespace bg = boost::geometry;
using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, false, true>;
using BgMulti = bg::model::multi_polygon<BgPolygon>;

struct RawPolygon {
    Ring outer;
    std::vector<Ring> holes;
};

std::string trim(std::string_view s)
{
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::string upper(std::string s)
{
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

Ring clean_ring(Ring ring)
{
    Ring out;
    for (const Point& p : ring) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InputError("non-finite coordinate");
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    }
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

Region finish(std::vector<RawPolygon> polys)
{
    if (polys.empty()) throw InputError("no polygon found");
    if (polys.size() > 1) throw StructuralError("multipolygon unsupported: " + std::to_string(polys.size()) + " parts");
    RawPolygon& p = polys.front();
    if (!p.holes.empty()) throw StructuralError("holes unsupported: " + std::to_string(p.holes.size()) + " interior rings");
    Ring ring = clean_ring(std::move(p.outer));
    if (ring.size() < 3) throw StructuralError("not simple: fewer than 3 distinct vertices");
    if (!is_simple(ring)) throw StructuralError("not simple: boundary self-intersects");
    if (signed_area(ring) == 0.0) throw StructuralError("not simple: zero area");
    return make_region(std::move(ring));
}

Ring from_bg(const bg::model::ring<BgPoint, false, true>& r)
{
    Ring out;
    for (const BgPoint& p : r) out.push_back({p.x(), p.y()});
    return out;
}

RawPolygon from_bg(const BgPolygon& poly)
{
    RawPolygon raw;
    raw.outer = from_bg(poly.outer());
    for (const auto& h : poly.inners()) raw.holes.push_back(from_bg(h));
    return raw;
}

std::vector<RawPolygon> parse_wkt(const std::string& raw)
{
    std::string text = trim(raw);
    std::string head = upper(text.substr(0, 12));
    std::vector<RawPolygon> out;
    try {
        if (head.starts_with("MULTIPOLYGON")) {
            BgMulti multi;
            bg::read_wkt(text, multi);
            for (const BgPolygon& p : multi) out.push_back(from_bg(p));
        } else if (head.starts_with("POLYGON")) {
            BgPolygon poly;
            bg::read_wkt(text, poly);
            out.push_back(from_bg(poly));
        } else {
            throw InputError("wkt: expected POLYGON or MULTIPOLYGON");
        }
    } catch (const bg::read_wkt_exception& e) {
        throw InputError(std::string("wkt: ") + e.what());
    }
    return out;
}

Ring json_ring(const nlohmann::json& j)
{
    if (!j.is_array()) throw InputError("geojson: ring is not an array");
    Ring ring;
    for (const auto& c : j) {
        if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number())
            throw InputError("geojson: bad position");
        ring.push_back({c[0].get<double>(), c[1].get<double>()});
    }
    return ring;
}

RawPolygon json_polygon(const nlohmann::json& coords)
{
    if (!coords.is_array() || coords.empty()) throw InputError("geojson: empty polygon");
    RawPolygon raw;
    raw.outer = json_ring(coords[0]);
    for (std::size_t k = 1; k < coords.size(); ++k) raw.holes.push_back(json_ring(coords[k]));
    return raw;
}

void collect_geojson(const nlohmann::json& j, std::vector<RawPolygon>& out)
{
    if (!j.is_object() || !j.contains("type")) throw InputError("geojson: object without type");
    std::string type = j.at("type").get<std::string>();
    if (type == "FeatureCollection") {
        for (const auto& f : j.at("features")) collect_geojson(f, out);
    } else if (type == "Feature") {
        collect_geojson(j.at("geometry"), out);
    } else if (type == "Polygon") {
        out.push_back(json_polygon(j.at("coordinates")));
    } else if (type == "MultiPolygon") {
        for (const auto& p : j.at("coordinates")) out.push_back(json_polygon(p));
    } else {
        throw InputError("geojson: unsupported geometry type " + type);
    }
}

std::vector<RawPolygon> parse_geojson(const std::string& text)
{
    std::vector<RawPolygon> out;
    try {
        collect_geojson(nlohmann::json::parse(text), out);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("geojson: ") + e.what());
    }
    return out;
}

std::optional<double> parse_number(std::string_view s)
{
    std::string t = trim(s);
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
    return v;
}

std::vector<RawPolygon> parse_csv(const std::string& text)
{
    RawPolygon raw;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::size_t comma = t.find_first_of(",;\t ");
        if (comma == std::string::npos) throw InputError("csv line " + std::to_string(lineno) + ": expected x,y");
        std::string_view rest = std::string_view(t).substr(comma + 1);
        auto x = parse_number(std::string_view(t).substr(0, comma));
        auto y = parse_number(rest.substr(0, rest.find_first_of(",;\t")));
        if (!x || !y) {
            if (!seen_data) {
                seen_data = true;
                continue;
            }
            throw InputError("csv line " + std::to_string(lineno) + ": expected two numbers");
        }
        seen_data = true;
        raw.outer.push_back({*x, *y});
    }
    std::vector<RawPolygon> out;
    if (!raw.outer.empty()) out.push_back(std::move(raw));
    return out;
}

void write_ring_wkt(const Ring& ring, std::ostream& out)
{
    out << '(';
    for (std::size_t k = 0; k <= ring.size(); ++k) {
        const Point& p = ring[k % ring.size()];
        if (k) out << ", ";
        out << format_double(p.x) << ' ' << format_double(p.y);
    }
    out << ')';
}

void write_polygon_wkt(const Polygon& poly, std::ostream& out)
{
    out << '(';
    write_ring_wkt(poly.outer, out);
    for (const Ring& h : poly.holes) {
        out << ", ";
        write_ring_wkt(h, out);
    }
    out << ')';
}

std::string fixed(double v, int digits = 2)
{
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", digits, v);
    return buf.data();
}

std::string tick_label(double v)
{
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.3g", v);
    return buf.data();
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr std::array<const char*, 3> kDashes = {"", "8 4", "2 3"};

}  // namespace

const char* to_string(PolygonFormat f)
{
    switch (f) {
    case PolygonFormat::Wkt: return "wkt";
    case PolygonFormat::GeoJson: return "geojson";
    case PolygonFormat::CsvVertices: return "csv";
    }
    return "unknown";
}

std::optional<PolygonFormat> format_from_string(const std::string& name)
{
    std::string n = upper(name);
    if (n == "WKT") return PolygonFormat::Wkt;
    if (n == "GEOJSON" || n == "JSON") return PolygonFormat::GeoJson;
    if (n == "CSV" || n == "CSV_VERTICES") return PolygonFormat::CsvVertices;
    return std::nullopt;
}

std::optional<PolygonFormat> format_from_path(const std::filesystem::path& path)
{
    std::string ext = upper(path.extension().string());
    if (ext == ".WKT") return PolygonFormat::Wkt;
    if (ext == ".GEOJSON" || ext == ".JSON") return PolygonFormat::GeoJson;
    if (ext == ".CSV") return PolygonFormat::CsvVertices;
    return std::nullopt;
}

Region parse_polygon(const std::string& text, PolygonFormat format)
{
    switch (format) {
    case PolygonFormat::Wkt: return finish(parse_wkt(text));
    case PolygonFormat::GeoJson: return finish(parse_geojson(text));
    case PolygonFormat::CsvVertices: return finish(parse_csv(text));
    }
    throw InputError("unknown format");
}

Region polygon_from_ring(Ring ring)
{
    std::vector<RawPolygon> polys(1);
    polys[0].outer = std::move(ring);
    return finish(std::move(polys));
}

Region load_polygon(const std::filesystem::path& path, std::optional<PolygonFormat> format, bool normalize_area)
{
    if (!format) format = format_from_path(path);
    if (!format) throw InputError("cannot infer the format of " + path.string() + "; pass --format");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    Region r = parse_polygon(buf.str(), *format);
    return normalize_area ? normalized_area(r) : r;
}

Region normalized_area(const Region& r)
{
    double a = area(r);
    if (!(a > 0.0)) throw StructuralError("cannot normalize a region of zero area");
    return scale(r, 1.0 / std::sqrt(a));
}

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void write_csv_vertices(const Region& r, std::ostream& out)
{
    if (r.empty()) return;
    out << "x,y\n";
    for (const Point& p : r.polygons.front().outer) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

void write_wkt(const Region& r, std::ostream& out)
{
    if (r.empty()) {
        out << "POLYGON EMPTY\n";
        return;
    }
    if (r.polygons.size() == 1) {
        out << "POLYGON ";
        write_polygon_wkt(r.polygons.front(), out);
    } else {
        out << "MULTIPOLYGON (";
        for (std::size_t k = 0; k < r.polygons.size(); ++k) {
            if (k) out << ", ";
            write_polygon_wkt(r.polygons[k], out);
        }
        out << ')';
    }
    out << '\n';
}

void write_profile_csv(const ProfileBound& bound, std::ostream& out)
{
    out << "t,p,source\n";
    for (const ProfileSample& s : bound.samples)
        out << format_double(s.t) << ',' << format_double(s.p) << ',' << to_string(s.source) << '\n';
}

void write_tv_study_csv(const std::vector<TVStudyRow>& rows, std::ostream& out)
{
    out << "ny,stencil,estimate,rel_error\n";
    for (const TVStudyRow& r : rows)
        out << r.ny << ',' << to_string(r.stencil) << ',' << format_double(r.estimate) << ','
            << format_double(r.rel_error) << '\n';
}

EventLines event_lines(const TightnessReport& rep)
{
    EventLines ev;
    ev.max_inscribed_t = std::numbers::pi * rep.inr * rep.inr;
    ev.max_area_t = rep.area;
    if (std::isfinite(rep.r_n)) {
        ev.minimal_neck_t = rep.t_high_tight;
        ev.conservatively_tight_t = rep.t_low_tight;
    }
    return ev;
}

void emit_plot(const std::vector<PlotCurve>& curves, const std::vector<EventLines>& events, std::ostream& out)
{
    double t_max = 0.0;
    double p_max = 0.0;
    bool any = false;
    for (const PlotCurve& c : curves) {
        for (const ProfileSample& s : c.bound.samples) {
            t_max = std::max(t_max, s.t);
            p_max = std::max(p_max, s.p);
            any = true;
        }
    }
    if (!any) throw ParameterError("nothing to plot");
    for (const EventLines& ev : events) t_max = std::max(t_max, ev.max_area_t);
    t_max *= 1.02;
    p_max *= 1.08;
    if (!(t_max > 0.0)) t_max = 1.0;
    if (!(p_max > 0.0)) p_max = 1.0;

    const double width = 800.0;
    const double height = 560.0;
    const double left = 70.0;
    const double right = 180.0;
    const double top = 30.0;
    const double bottom = 50.0;
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto sx = [&](double t) { return left + pw * t / t_max; };
    auto sy = [&](double p) { return top + ph * (1.0 - p / p_max); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<g class=\"axes\" stroke=\"black\">\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph << "\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        double t = t_max * k / 5.0;
        double p = p_max * k / 5.0;
        out << "<line x1=\"" << fixed(sx(t)) << "\" y1=\"" << top + ph << "\" x2=\"" << fixed(sx(t)) << "\" y2=\""
            << top + ph + 5 << "\"/>\n";
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(sy(p)) << "\" x2=\"" << left << "\" y2=\""
            << fixed(sy(p)) << "\"/>\n";
    }
    out << "</g>\n<g class=\"ticks\" fill=\"black\">\n";
    for (int k = 0; k <= 5; ++k) {
        double t = t_max * k / 5.0;
        double p = p_max * k / 5.0;
        out << "<text x=\"" << fixed(sx(t)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
            << tick_label(t) << "</text>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << fixed(sy(p) + 4) << "\" text-anchor=\"end\">" << tick_label(p)
            << "</text>\n";
    }
    out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">area t</text>\n";
    out << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << top + ph / 2 << ")\">perimeter p</text>\n</g>\n";

    static constexpr std::array<const char*, 4> kEventNames = {"max inscribed", "minimal neck",
                                                               "conservatively tight", "max area"};
    for (std::size_t d = 0; d < events.size(); ++d) {
        const EventLines& ev = events[d];
        std::array<std::optional<double>, 4> ts = {ev.max_inscribed_t, ev.minimal_neck_t, ev.conservatively_tight_t,
                                                   ev.max_area_t};
        for (std::size_t k = 0; k < ts.size(); ++k) {
            if (!ts[k]) continue;
            double x = sx(*ts[k]);
            double ly = top + 12.0 + 14.0 * static_cast<double>(k + 4 * d);
            out << "<line class=\"event\" x1=\"" << fixed(x) << "\" y1=\"" << top << "\" x2=\"" << fixed(x)
                << "\" y2=\"" << top + ph << "\" stroke=\"#555555\" stroke-dasharray=\"4 4\"/>\n";
            out << "<text class=\"event-label\" x=\"" << fixed(x + 3) << "\" y=\"" << fixed(ly) << "\" fill=\"#555555\">"
                << kEventNames[k] << "</text>\n";
        }
    }

    for (std::size_t c = 0; c < curves.size(); ++c) {
        const PlotCurve& curve = curves[c];
        if (curve.bound.empty()) continue;
        const char* color = kColors[c % kColors.size()];
        const char* dash = kDashes[c % kDashes.size()];
        out << "<polyline class=\"curve\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        if (*dash) out << " stroke-dasharray=\"" << dash << '"';
        out << " points=\"";
        for (std::size_t k = 0; k < curve.bound.samples.size(); ++k) {
            const ProfileSample& s = curve.bound.samples[k];
            if (k) out << ' ';
            out << fixed(sx(s.t)) << ',' << fixed(sy(s.p));
        }
        out << "\"/>\n";
        double ly = top + 10.0 + 18.0 * static_cast<double>(c);
        out << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << fixed(ly) << "\" x2=\"" << left + pw + 45 << "\" y2=\""
            << fixed(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        if (*dash) out << " stroke-dasharray=\"" << dash << '"';
        out << "/>\n<text x=\"" << left + pw + 50 << "\" y=\"" << fixed(ly + 4) << "\">" << escape(curve.label) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace isoprofile
