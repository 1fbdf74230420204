#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "persim/baselines.hpp"
#include "persim/config.hpp"
#include "persim/fusion.hpp"
#include "persim/log_features.hpp"
#include "persim/stats.hpp"

namespace py = pybind11;

namespace {

persim::PersimConfig config_from_object(const py::object& obj) {
    if (obj.is_none()) return persim::PersimConfig{};
    std::string text;
    if (py::isinstance<py::str>(obj)) {
        text = obj.cast<std::string>();
    } else {
        const py::object dumps = py::module_::import("json").attr("dumps");
        text = dumps(obj).cast<std::string>();
    }
    return persim::config_from_json_text(text);
}

// Accepts HxWx3 or HxW (promoted to gray RGB) uint8 arrays.
persim::RgbImage rgb_from_array(const py::array& arr) {
    const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> a(arr);
    if (a.ndim() != 2 && !(a.ndim() == 3 && a.shape(2) == 3))
        throw persim::DimensionError("expected an HxWx3 or HxW uint8 array");

    const int rows = static_cast<int>(a.shape(0));
    const int cols = static_cast<int>(a.shape(1));
    persim::RgbImage img{persim::ImagePlane(rows, cols), persim::ImagePlane(rows, cols),
                         persim::ImagePlane(rows, cols)};
    if (a.ndim() == 2) {
        auto v = a.unchecked<2>();
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                img.r.at(r, c) = img.g.at(r, c) = img.b.at(r, c) = v(r, c);
    } else {
        auto v = a.unchecked<3>();
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                img.r.at(r, c) = v(r, c, 0);
                img.g.at(r, c) = v(r, c, 1);
                img.b.at(r, c) = v(r, c, 2);
            }
        }
    }
    return img;
}

persim::PairedSamples samples_from(const std::vector<double>& x, const std::vector<double>& y) {
    return persim::PairedSamples{x, y};
}

double score_pair(const py::array& ref, const py::array& dist, const py::object& config,
                  persim::MetricId id) {
    const persim::PersimConfig cfg = config_from_object(config);
    const persim::LabImage lab_ref = persim::rgb_to_lab(rgb_from_array(ref));
    const persim::LabImage lab_dist = persim::rgb_to_lab(rgb_from_array(dist));
    switch (id) {
        case persim::MetricId::PerSIM: return persim::persim(lab_ref, lab_dist, cfg).value;
        case persim::MetricId::PerSIM_SR:
            return persim::persim_single_resolution(lab_ref, lab_dist, cfg).value;
        default: return persim::logsim_metric(lab_ref, lab_dist, cfg).value;
    }
}

}  // namespace

PYBIND11_MODULE(_persim, m) {
    m.doc() = "PerSIM: multi-resolution perceptual similarity in CIELAB";

    m.def(
        "persim",
        [](const py::array& ref, const py::array& dist, const py::object& config) {
            return score_pair(ref, dist, config, persim::MetricId::PerSIM);
        },
        py::arg("ref"), py::arg("dist"), py::arg("config") = py::none(),
        "Multi-resolution PerSIM score of a distorted image against its reference.");

    m.def(
        "persim_sr",
        [](const py::array& ref, const py::array& dist, const py::object& config) {
            return score_pair(ref, dist, config, persim::MetricId::PerSIM_SR);
        },
        py::arg("ref"), py::arg("dist"), py::arg("config") = py::none(),
        "Single-resolution PerSIM score.");

    m.def(
        "logsim",
        [](const py::array& ref, const py::array& dist, const py::object& config) {
            return score_pair(ref, dist, config, persim::MetricId::LogSIM);
        },
        py::arg("ref"), py::arg("dist"), py::arg("config") = py::none(),
        "LoG-only ablation of PerSIM (no chroma similarity).");

    m.def(
        "psnr",
        [](const py::array& ref, const py::array& dist) {
            return persim::psnr(rgb_from_array(ref), rgb_from_array(dist));
        },
        py::arg("ref"), py::arg("dist"));

    m.def(
        "rmse",
        [](const py::array& ref, const py::array& dist) {
            return persim::rmse(rgb_from_array(ref), rgb_from_array(dist));
        },
        py::arg("ref"), py::arg("dist"));

    m.def(
        "rgb_to_lab",
        [](const py::array& arr) {
            const persim::LabImage lab = persim::rgb_to_lab(rgb_from_array(arr));
            py::array_t<double> out({lab.rows(), lab.cols(), 3});
            auto v = out.mutable_unchecked<3>();
            for (int r = 0; r < lab.rows(); ++r) {
                for (int c = 0; c < lab.cols(); ++c) {
                    v(r, c, 0) = lab.L.at(r, c);
                    v(r, c, 1) = lab.a.at(r, c);
                    v(r, c, 2) = lab.b.at(r, c);
                }
            }
            return out;
        },
        py::arg("rgb"), "sRGB (8-bit) to CIE 1976 L*a*b*, D65.");

    m.def(
        "log_kernel",
        [](double sigma, int size) {
            const persim::LogKernel k = persim::make_log_kernel(sigma, size);
            py::array_t<double> out({k.size(), k.size()});
            auto v = out.mutable_unchecked<2>();
            for (int i = 0; i < k.size(); ++i)
                for (int j = 0; j < k.size(); ++j) v(i, j) = k.taps.at(i, j);
            return out;
        },
        py::arg("sigma"), py::arg("size"), "Discrete Laplacian-of-Gaussian taps.");

    m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) {
        return persim::pearson(samples_from(x, y));
    });
    m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) {
        return persim::spearman(samples_from(x, y));
    });
    m.def("kendall", [](const std::vector<double>& x, const std::vector<double>& y) {
        return persim::kendall(samples_from(x, y));
    });

    m.def(
        "fit_logistic",
        [](const std::vector<double>& objective, const std::vector<double>& subjective,
           const std::string& model) {
            const persim::LogisticModel lm = model == "literal"
                                                 ? persim::LogisticModel::LiteralPrint
                                                 : persim::LogisticModel::Vqeg;
            const persim::LogisticFit fit =
                persim::fit_logistic(samples_from(objective, subjective), std::nullopt, lm);
            py::dict d;
            d["beta"] = std::vector<double>(fit.beta.begin(), fit.beta.end());
            d["residual_rmse"] = fit.residual_rmse;
            d["converged"] = fit.converged;
            d["iterations"] = fit.iterations;
            return d;
        },
        py::arg("objective"), py::arg("subjective"), py::arg("model") = "vqeg",
        "Five-parameter monotonic regression; returns beta, residual_rmse, converged, iterations.");

    m.def("default_config", [] {
        const py::object loads = py::module_::import("json").attr("loads");
        return loads(persim::config_to_json_text(persim::PersimConfig{}));
    });

    py::register_exception<persim::DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<persim::ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<persim::DegenerateInputError>(m, "DegenerateInputError",
                                                         PyExc_ValueError);
}
