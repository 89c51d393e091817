#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "isoprofile/io.hpp"
#include "isoprofile/pipeline.hpp"

namespace py = pybind11;
using namespace isoprofile;

namespace {

Region region_from(const std::vector<std::pair<double, double>>& pts)
{
    Ring ring;
    for (auto [x, y] : pts) ring.push_back({x, y});
    return polygon_from_ring(std::move(ring));
}

std::vector<std::pair<double, double>> vertices(const Region& r)
{
    std::vector<std::pair<double, double>> out;
    if (!r.empty())
        for (const Point& p : r.polygons.front().outer) out.emplace_back(p.x, p.y);
    return out;
}

py::list samples(const ProfileBound& b)
{
    py::list out;
    for (const ProfileSample& s : b.samples) out.append(py::make_tuple(s.t, s.p, to_string(s.source)));
    return out;
}

PolygonFormat format_arg(const std::string& name)
{
    auto f = format_from_string(name);
    if (!f) throw ParameterError("unknown format: " + name);
    return *f;
}

Stencil stencil_arg(const std::string& name)
{
    auto s = stencil_from_string(name);
    if (!s) throw ParameterError("unknown stencil: " + name);
    return *s;
}

}  // namespace

PYBIND11_MODULE(_isoprofile, m)
{
    m.doc() = "Isoperimetric profile upper bounds for simple polygons";

    py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    py::class_<Region>(m, "Region")
        .def(py::init(&region_from), py::arg("vertices"))
        .def_property_readonly("area", [](const Region& r) { return area(r); })
        .def_property_readonly("perimeter", [](const Region& r) { return perimeter(r); })
        .def("vertices", &vertices)
        .def("wkt", [](const Region& r) {
            std::ostringstream s;
            write_wkt(r, s);
            return s.str();
        })
        .def("__len__", [](const Region& r) { return vertex_count(r); });

    m.def("parse_polygon", [](const std::string& text, const std::string& format) {
        return parse_polygon(text, format_arg(format));
    }, py::arg("text"), py::arg("format"));
    m.def("load_polygon", [](const std::filesystem::path& path, std::optional<std::string> format, bool normalize) {
        return load_polygon(path, format ? std::optional(format_arg(*format)) : std::nullopt, normalize);
    }, py::arg("path"), py::arg("format") = py::none(), py::arg("normalize_area") = false);
    m.def("normalized_area", &normalized_area);

    py::class_<ParamOverrides>(m, "Params")
        .def(py::init<>())
        .def_readwrite("d_c", &ParamOverrides::d_c)
        .def_readwrite("r_l", &ParamOverrides::r_l)
        .def_readwrite("d_x", &ParamOverrides::d_x)
        .def_readwrite("s_max", &ParamOverrides::s_max)
        .def_readwrite("r_c", &ParamOverrides::r_c)
        .def_readwrite("n_open", &ParamOverrides::n_open);

    py::class_<Analysis>(m, "Analysis")
        .def_property_readonly("profile", [](const Analysis& a) { return samples(a.combined); })
        .def_property_readonly("medial_axis_bound", [](const Analysis& a) { return samples(a.medial); })
        .def_property_readonly("opening_bound", [](const Analysis& a) { return samples(a.opening); })
        .def_property_readonly("prefix", [](const Analysis& a) { return samples(a.prefix); })
        .def_property_readonly("report_json", &report_json)
        .def_property_readonly("timings", [](const Analysis& a) { return a.timings; })
        .def_property_readonly("params", [](const Analysis& a) {
            const AlgorithmParams& p = a.params;
            py::dict d;
            d["d_c"] = p.d_c;
            d["r_l"] = p.r_l;
            d["d_x"] = p.d_x;
            d["s_max"] = p.s_max;
            d["r_c"] = p.r_c;
            d["n_open"] = p.n_open;
            return d;
        });

    m.def("analyze", [](const Region& omega, const ParamOverrides& params, bool opening, std::vector<std::size_t> tv) {
        RunConfig cfg;
        cfg.params = params;
        cfg.run_opening = opening;
        cfg.tv_nys = std::move(tv);
        py::gil_scoped_release release;
        return analyze(omega, cfg);
    }, py::arg("region"), py::arg("params") = ParamOverrides{}, py::arg("opening") = true,
          py::arg("tv") = std::vector<std::size_t>{});

    m.def("run", [](const std::filesystem::path& input, const std::filesystem::path& out, bool plot, bool snapshots,
                    bool normalize) {
        RunConfig cfg;
        cfg.input = input;
        cfg.out_dir = out;
        cfg.emit_plot = plot;
        cfg.emit_snapshots = snapshots;
        cfg.normalize_area = normalize;
        py::gil_scoped_release release;
        return run_pipeline(cfg);
    }, py::arg("input"), py::arg("out_dir"), py::arg("plot") = true, py::arg("snapshots") = false,
          py::arg("normalize_area") = false);

    m.def("necks_json", [](const Region& omega) { return necks_json(find_necks(compute_medial_axis(omega))); });

    m.def("tv_perimeter", [](const Region& omega, std::size_t ny, const std::string& stencil) {
        return tv_perimeter(rasterize(omega, ny), stencil_arg(stencil));
    }, py::arg("region"), py::arg("ny"), py::arg("stencil") = "smooth3");
    m.def("tv_study", [](const Region& omega, std::vector<std::size_t> nys, std::optional<double> reference) {
        py::list out;
        for (const TVStudyRow& r : tv_study(omega, nys, reference.value_or(perimeter(omega))))
            out.append(py::make_tuple(r.ny, to_string(r.stencil), r.estimate, r.rel_error));
        return out;
    }, py::arg("region"), py::arg("nys"), py::arg("reference") = py::none());
}
