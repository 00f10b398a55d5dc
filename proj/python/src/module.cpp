#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "fisr/float_bits.hpp"
#include "fisr/kernel.hpp"
#include "fisr/model.hpp"
#include "fisr/optimizer.hpp"
#include "fisr/verifier.hpp"

namespace py = pybind11;

namespace {

fisr::Parity parse_parity(const std::string& name) {
    if (name == "even") return fisr::Parity::even;
    if (name == "odd") return fisr::Parity::odd;
    if (name == "smooth") return fisr::Parity::smooth;
    throw py::value_error("parity must be 'even', 'odd' or 'smooth'");
}

}  // namespace

PYBIND11_MODULE(_fisr, m) {
    m.doc() = "Fast inverse square root with a parameterised magic constant";

    py::class_<fisr::FloatRepr>(m, "FloatRepr")
        .def_readonly("bits", &fisr::FloatRepr::bits)
        .def_readonly("biased_exponent", &fisr::FloatRepr::biased_exponent)
        .def_readonly("exponent", &fisr::FloatRepr::exponent)
        .def_readonly("mantissa_int", &fisr::FloatRepr::mantissa_int)
        .def_readonly("mantissa_frac", &fisr::FloatRepr::mantissa_frac)
        .def_property_readonly("value", &fisr::FloatRepr::value);

    m.def("decode", py::overload_cast<std::uint32_t>(&fisr::decode), py::arg("bits"));
    m.def("encode", [](int exponent, std::uint32_t mantissa) { return fisr::encode(fisr::make_repr(exponent, mantissa)); },
          py::arg("exponent"), py::arg("mantissa_int"));

    m.attr("CLASSIC_MAGIC") = fisr::kClassicMagic;
    m.def("satisfies_seed_model", &fisr::satisfies_seed_model, py::arg("magic"));
    m.def("seed_bits", &fisr::seed_bits, py::arg("x"), py::arg("magic"));
    m.def("newton_step", &fisr::newton_step, py::arg("y"), py::arg("half_x"));
    m.def(
        "invsqrt",
        [](float x, std::uint32_t magic, unsigned iterations) { return fisr::invsqrt(x, fisr::KernelConfig(magic, iterations)); },
        py::arg("x"), py::arg("magic") = fisr::kClassicMagic, py::arg("iterations") = 2);

    m.def(
        "t_from_magic", [](std::uint32_t magic, const std::string& parity) { return fisr::t_from_magic(magic, parse_parity(parity)); },
        py::arg("magic"), py::arg("parity") = "smooth");
    m.def("magic_from_t", &fisr::magic_from_t, py::arg("t"));
    m.def("seed_model", &fisr::seed_model, py::arg("x_tilde"), py::arg("t"));
    m.def("relative_error", &fisr::relative_error, py::arg("x_tilde"), py::arg("t"), py::arg("k"));
    m.def("absolute_error", &fisr::absolute_error, py::arg("x_tilde"), py::arg("t"), py::arg("k"));
    m.def("nr_error", &fisr::nr_error, py::arg("d"));

    py::class_<fisr::DerivationResult>(m, "DerivationResult")
        .def_property_readonly("objective", [](const fisr::DerivationResult& r) { return std::string(fisr::to_string(r.objective)); })
        .def_readonly("k", &fisr::DerivationResult::k)
        .def_readonly("t", &fisr::DerivationResult::t_opt)
        .def_readonly("magic", &fisr::DerivationResult::magic)
        .def_readonly("predicted_max_error", &fisr::DerivationResult::predicted_max_error)
        .def_readonly("balance_residual", &fisr::DerivationResult::balance_residual)
        .def("__repr__", [](const fisr::DerivationResult& r) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "DerivationResult(%s, k=%d, t=%.10f, magic=0x%08X, max_error=%.6g)",
                          std::string(fisr::to_string(r.objective)).c_str(), r.k, r.t_opt, r.magic, r.predicted_max_error);
            return std::string(buf);
        });
    m.def("derive_all", &fisr::derive_all);

    m.def(
        "sweep",
        [](std::uint32_t magic, unsigned iterations, std::uint64_t samples, std::uint64_t seed, bool full_range) {
            fisr::SweepSpec spec;
            spec.magic = magic;
            spec.iterations = iterations;
            if (samples == 0)
                spec.domain = fisr::UnitIntervalExhaustive{};
            else if (full_range)
                spec.domain = fisr::FullRangeRandom{samples, seed};
            else
                spec.domain = fisr::UnitIntervalRandom{samples, seed};
            fisr::ErrorReport r;
            {
                py::gil_scoped_release release;
                r = fisr::sweep(spec);
            }
            py::dict d;
            d["max_relative"] = r.max_relative;
            d["argmax_relative"] = r.argmax_relative;
            d["max_absolute"] = r.max_absolute;
            d["argmax_absolute"] = r.argmax_absolute;
            d["samples"] = r.samples;
            return d;
        },
        py::arg("magic"), py::arg("iterations"), py::arg("samples") = 0, py::arg("seed") = 1,
        py::arg("full_range") = false,
        "Max |relative| and |absolute| error; samples=0 sweeps every float in [1,4).");

    m.def(
        "verify_theorem1",
        [](std::uint32_t magic) {
            fisr::Theorem1Report r;
            {
                py::gil_scoped_release release;
                r = fisr::verify_theorem1(magic);
            }
            py::dict d;
            d["checked"] = r.checked;
            d["mismatches"] = r.mismatches;
            d["corollary_gap"] = r.corollary_gap;
            return d;
        },
        py::arg("magic"));
}
