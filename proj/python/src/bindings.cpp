#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sgc/allocator.hpp"
#include "sgc/channel.hpp"
#include "sgc/deadline.hpp"
#include "sgc/error.hpp"
#include "sgc/sim.hpp"
#include "sgc/surface.hpp"
#include "sgc/toy_diffusion.hpp"

namespace py = pybind11;
using namespace sgc;

namespace {

py::dict allocation_dict(const Allocation& a) {
    py::dict d;
    d["policy"] = a.policy;
    d["B_s"] = a.B_s;
    d["B_l"] = a.B_l;
    d["t_s"] = a.t_s;
    d["t_l"] = a.t_l;
    d["eps_star"] = a.eps_star ? py::cast(*a.eps_star) : py::none();
    d["psnr"] = a.achieved_psnr;
    d["q"] = a.achieved_q;
    return d;
}

LinkPair links_of(std::int64_t d_mask, double snr_mask, std::int64_t d_text, double snr_text) {
    return {{d_mask, snr_mask}, {d_text, snr_text}};
}

}  // namespace

PYBIND11_MODULE(_sgc, m) {
    m.doc() = "Deadline-aware bandwidth allocation for two-stream generative transmission";

    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", domain.ptr());
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    m.def("db_to_linear", &db_to_linear);
    m.def("linear_to_db", &linear_to_db);
    m.def(
        "transmission_time",
        [](std::int64_t bits, double snr, double bandwidth) { return transmission_time({bits, snr}, bandwidth); },
        py::arg("data_size_bits"), py::arg("snr_linear"), py::arg("bandwidth_hz"));
    m.def(
        "required_bandwidth",
        [](std::int64_t bits, double snr, double deadline) { return required_bandwidth({bits, snr}, deadline); },
        py::arg("data_size_bits"), py::arg("snr_linear"), py::arg("deadline_s"));
    m.def("arrival_step", &arrival_step, py::arg("t"), py::arg("omega"), py::arg("steps"));

    py::class_<ToyDiffusionConfig>(m, "ToyDiffusionConfig")
        .def(py::init<>())
        .def_readwrite("latent_dim", &ToyDiffusionConfig::latent_dim)
        .def_readwrite("steps", &ToyDiffusionConfig::steps)
        .def_readwrite("step_duration", &ToyDiffusionConfig::step_duration)
        .def_readwrite("pull_rate", &ToyDiffusionConfig::pull_rate)
        .def_readwrite("weight_mask", &ToyDiffusionConfig::weight_mask)
        .def_readwrite("weight_text", &ToyDiffusionConfig::weight_text)
        .def_readwrite("seed", &ToyDiffusionConfig::seed)
        .def_readwrite("psnr_cap", &ToyDiffusionConfig::psnr_cap)
        .def_readwrite("max_signal", &ToyDiffusionConfig::max_signal);

    py::class_<QualitySurface>(m, "QualitySurface")
        .def_static("from_toy", py::overload_cast<const ToyDiffusionConfig&>(&QualitySurface::from_toy),
                    py::arg("config") = ToyDiffusionConfig{})
        .def_static("from_parametric", &QualitySurface::from_parametric, py::arg("weight_mask"),
                    py::arg("weight_text"), py::arg("exponent"), py::arg("steps"), py::arg("omega"),
                    py::arg("psnr_cap") = 100.0)
        .def_static("from_json", &QualitySurface::from_json)
        .def_static("load", &QualitySurface::load)
        .def("to_json", &QualitySurface::to_json)
        .def("save", &QualitySurface::save)
        .def_property_readonly("omega", &QualitySurface::omega)
        .def_property_readonly("steps", &QualitySurface::steps)
        .def_property_readonly("psnr_cap", &QualitySurface::psnr_cap)
        .def_property_readonly("psnr_ref", &QualitySurface::psnr_ref)
        .def("psnr_at", [](const QualitySurface& s, int a, int b) { return s.psnr_at({a, b}); })
        .def("q_at", [](const QualitySurface& s, int a, int b) { return s.q_at({a, b}); })
        .def("evaluate",
             [](const QualitySurface& s, double ts, double tl) {
                 const auto r = s.evaluate(ts, tl);
                 return py::make_tuple(r.psnr, r.q);
             })
        .def("superlevel_set", [](const QualitySurface& s, double eps) {
            std::vector<std::pair<int, int>> out;
            for (const auto& p : s.superlevel_set(eps)) out.emplace_back(p.mask_step, p.text_step);
            return out;
        });

    m.def(
        "deadline_curve",
        [](const QualitySurface& s, double eps_th, int K) {
            const auto curve = deadline_curve(s, eps_th, K);
            py::list pts;
            for (const auto& p : curve.points) {
                py::dict d;
                d["eps"] = p.epsilon;
                d["achievable"] = p.achievable;
                d["t_s"] = p.achievable ? py::cast(p.t_mask) : py::none();
                d["t_l"] = p.achievable ? py::cast(p.t_text) : py::none();
                pts.append(d);
            }
            return pts;
        },
        py::arg("surface"), py::arg("eps_th"), py::arg("K"));
    m.def("threshold_grid", &threshold_grid, py::arg("eps_th"), py::arg("K"));

    m.def(
        "allocate",
        [](const QualitySurface& s, const std::string& policy, double budget, std::int64_t d_mask, double snr_mask,
           std::int64_t d_text, double snr_text, int K, double eps_th) {
            const auto links = links_of(d_mask, snr_mask, d_text, snr_text);
            if (policy == "proposed") return allocation_dict(allocate_proposed(s, links, budget, K, eps_th));
            if (policy == "benchmark1") {
                return allocation_dict(evaluate_allocation(allocate_benchmark1(links, budget), links, s));
            }
            if (policy == "benchmark2") {
                return allocation_dict(evaluate_allocation(allocate_benchmark2(links, budget), links, s));
            }
            throw ValidationError("unknown policy '" + policy + "'");
        },
        py::arg("surface"), py::arg("policy"), py::arg("budget"), py::arg("data_size_mask") = 32768,
        py::arg("snr_mask") = 2.0, py::arg("data_size_text") = 8192, py::arg("snr_text") = 2.0, py::arg("K") = 20,
        py::arg("eps_th") = 0.65);

    m.def(
        "sweep",
        [](const std::string& config_json) {
            const auto cfg = config_json.empty() ? SimConfig{} : SimConfig::from_json(config_json);
            const auto records = run_sweep(cfg);
            return py::make_tuple(records_csv(records), summary_csv(summarize(records)));
        },
        py::arg("config_json") = "", "Runs a Monte Carlo sweep; returns (records_csv, summary_csv).");
    m.def("default_config_json", [] { return SimConfig{}.to_json(); });
}
