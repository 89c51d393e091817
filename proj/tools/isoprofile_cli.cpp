#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "isoprofile/io.hpp"
#include "isoprofile/pipeline.hpp"

using namespace isoprofile;

namespace {

std::vector<std::size_t> parse_nys(const std::string& spec)
{
    std::string list = spec.starts_with("ny=") ? spec.substr(3) : spec;
    std::vector<std::size_t> out;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        unsigned long v = std::stoul(item, &used);
        if (used != item.size()) throw ParameterError("bad ny value: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw ParameterError("empty ny list");
    return out;
}

std::optional<PolygonFormat> parse_format(const std::string& name)
{
    if (name.empty()) return std::nullopt;
    auto f = format_from_string(name);
    if (!f) throw ParameterError("unknown format: " + name);
    return f;
}

void emit(const std::string& path, const std::string& body)
{
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << body;
}

int fail(const char* kind, const std::exception& e, int code)
{
    std::cerr << "error: " << kind << ": " << e.what() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Upper bounds on the isoperimetric profile of simple polygons"};
    app.require_subcommand(1);

    std::vector<std::string> inputs;
    std::string format;
    std::string out_dir = "out";
    std::string tv_spec;
    RunConfig cfg;
    bool no_opening = false;
    auto* prof = app.add_subcommand("profile", "profile bound, tightness report and plot");
    prof->add_option("input", inputs, "polygon file(s); several inputs are overlaid")->required()->check(CLI::ExistingFile);
    prof->add_option("--format", format, "wkt, geojson or csv (default: from extension)");
    prof->add_option("--d-c", cfg.params.d_c, "max 1/r change per graph edge");
    prof->add_option("--r-l", cfg.params.r_l, "radius limit of the medial-axis graph");
    prof->add_option("--d-x", cfg.params.d_x, "max chord length of linearized arcs");
    prof->add_option("--s-max", cfg.params.s_max, "max arc length of a graph edge");
    prof->add_option("--r-c", cfg.params.r_c, "closing radius of post-processing");
    prof->add_option("--n-open", cfg.params.n_open, "opening radii sampled");
    prof->add_flag("--normalize-area", cfg.normalize_area, "scale the input to area 1");
    prof->add_flag("--snapshots", cfg.emit_snapshots, "write snapshots/ with one WKT per sample");
    prof->add_flag("--plot", cfg.emit_plot, "write plot.svg");
    prof->add_flag("--no-opening", no_opening, "skip the opening baseline");
    prof->add_option("--tv", tv_spec, "TV study resolutions, e.g. ny=50,100,200");
    prof->add_option("--out", out_dir, "output directory");

    std::string ma_input;
    std::string ma_out;
    auto* ma_cmd = app.add_subcommand("medial-axis", "exact medial axis as CSV");
    ma_cmd->add_option("input", ma_input)->required()->check(CLI::ExistingFile);
    ma_cmd->add_option("--format", format);
    ma_cmd->add_option("--out", ma_out, "CSV path (default stdout)");

    std::string neck_input;
    std::string neck_out;
    auto* neck_cmd = app.add_subcommand("necks", "generalized necks as JSON");
    neck_cmd->add_option("input", neck_input)->required()->check(CLI::ExistingFile);
    neck_cmd->add_option("--format", format);
    neck_cmd->add_option("--out", neck_out, "JSON path (default stdout)");

    std::string tv_input;
    std::string tv_out;
    std::string tv_nys = "50,100,200,400";
    double tv_reference = NAN;
    auto* tv_cmd = app.add_subcommand("tv-study", "TV perimeter estimates per stencil and resolution");
    tv_cmd->add_option("input", tv_input)->required()->check(CLI::ExistingFile);
    tv_cmd->add_option("--format", format);
    tv_cmd->add_option("--ny", tv_nys, "comma separated resolutions");
    tv_cmd->add_option("--reference", tv_reference, "reference perimeter (default: polygon perimeter)");
    tv_cmd->add_option("--out", tv_out, "CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*prof) {
            cfg.format = parse_format(format);
            cfg.run_opening = !no_opening;
            if (!tv_spec.empty()) cfg.tv_nys = parse_nys(tv_spec);
            if (inputs.size() == 1) {
                cfg.input = inputs.front();
                cfg.out_dir = out_dir;
                run_pipeline(cfg);
                return 0;
            }
            std::vector<PlotCurve> curves;
            std::vector<EventLines> events;
            for (const std::string& in : inputs) {
                RunConfig one = cfg;
                one.input = in;
                one.out_dir = std::filesystem::path(out_dir) / one.input.stem();
                Analysis a = run_pipeline(one);
                curves.push_back({one.input.stem().string(), a.combined});
                events.push_back(event_lines(a.report));
            }
            std::ostringstream svg;
            emit_plot(curves, events, svg);
            emit((std::filesystem::path(out_dir) / "overlay.svg").string(), svg.str());
            return 0;
        }
        if (*ma_cmd) {
            Region omega = load_polygon(ma_input, parse_format(format));
            std::ostringstream s;
            write_medial_axis_csv(compute_medial_axis(omega), s);
            emit(ma_out, s.str());
            return 0;
        }
        if (*neck_cmd) {
            Region omega = load_polygon(neck_input, parse_format(format));
            emit(neck_out, necks_json(find_necks(compute_medial_axis(omega))));
            return 0;
        }
        if (*tv_cmd) {
            Region omega = load_polygon(tv_input, parse_format(format));
            double ref = std::isnan(tv_reference) ? perimeter(omega) : tv_reference;
            std::ostringstream s;
            write_tv_study_csv(tv_study(omega, parse_nys(tv_nys), ref), s);
            emit(tv_out, s.str());
            return 0;
        }
    } catch (const StructuralError& e) {
        return fail("structural", e, 2);
    } catch (const InputError& e) {
        return fail("input", e, 2);
    } catch (const ParameterError& e) {
        return fail("parameter", e, 3);
    } catch (const std::exception& e) {
        return fail("internal", e, 1);
    }
    return 0;
}
