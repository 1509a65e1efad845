#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "collatz_mersenne/catalog.hpp"
#include "collatz_mersenne/collatz.hpp"
#include "collatz_mersenne/errors.hpp"
#include "collatz_mersenne/expression.hpp"
#include "collatz_mersenne/heuristics.hpp"
#include "collatz_mersenne/survey.hpp"

namespace py = pybind11;

// Python int <-> cm::Natural through hexadecimal text.
namespace pybind11::detail {

template <>
struct type_caster<cm::Natural> {
    PYBIND11_TYPE_CASTER(cm::Natural, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        if (PyObject_RichCompareBool(src.ptr(), int_(0).ptr(), Py_LT) == 1) {
            throw value_error("expected a non-negative integer");
        }
        auto hex = reinterpret_steal<object>(PyNumber_ToBase(src.ptr(), 16));
        if (!hex) throw error_already_set();
        std::string text = hex.cast<std::string>();
        value = cm::Natural::from_hex(std::string_view(text).substr(2));
        return true;
    }

    static handle cast(const cm::Natural& n, return_value_policy, handle) {
        std::string hex = n.to_hex();
        return PyLong_FromString(hex.c_str(), nullptr, 16);
    }
};

}  // namespace pybind11::detail

PYBIND11_MODULE(_core, m) {
    m.doc() = "Collatz path lengths of Mersenne numbers";

    auto error = py::register_exception<cm::Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<cm::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<cm::RangeError>(m, "RangeError", PyExc_IndexError);
    py::register_exception<cm::CycleGuardExceeded>(m, "CycleGuardExceeded", error.ptr());
    py::register_exception<cm::DegenerateFitError>(m, "DegenerateFitError", PyExc_ValueError);
    py::register_exception<cm::DegenerateStatsError>(m, "DegenerateStatsError", PyExc_ValueError);
    py::register_exception<cm::ParseError>(m, "ParseError", PyExc_ValueError);

    m.attr("DEFAULT_CYCLE_GUARD") = cm::kDefaultCycleGuard;

    py::class_<cm::PathResult>(m, "PathResult")
        .def_readonly("d", &cm::PathResult::d)
        .def_readonly("odd_steps", &cm::PathResult::odd_steps)
        .def_readonly("even_steps", &cm::PathResult::even_steps)
        .def_readonly("peak_bit_length", &cm::PathResult::peak_bit_length)
        .def("__eq__", [](const cm::PathResult& a, const cm::PathResult& b) { return a == b; })
        .def("__repr__", [](const cm::PathResult& r) {
            return "PathResult(d=" + std::to_string(r.d) + ", odd_steps=" + std::to_string(r.odd_steps) +
                   ", even_steps=" + std::to_string(r.even_steps) +
                   ", peak_bit_length=" + std::to_string(r.peak_bit_length) + ")";
        });

    m.def("collatz_next", &cm::collatz_next, py::arg("x"));
    m.def(
        "odd_step_accelerated",
        [](const cm::Natural& x) {
            auto s = cm::odd_step_accelerated(x);
            return py::make_tuple(s.next, s.consumed);
        },
        py::arg("x"), "Returns (next, consumed_steps).");
    m.def("path_length", &cm::path_length, py::arg("x"), py::arg("cycle_guard") = cm::kDefaultCycleGuard,
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "path_length_of",
        [](const std::string& expr, std::uint64_t cycle_guard) {
            cm::Natural start = cm::evaluate(cm::parse_expression(expr));
            py::gil_scoped_release release;
            return cm::path_length(start, cycle_guard);
        },
        py::arg("expr"), py::arg("cycle_guard") = cm::kDefaultCycleGuard,
        "Path length of a number expression such as 'M9689', 'Mp20' or '2^64'.");
    m.def(
        "raw_advance",
        [](const cm::Natural& x, std::uint64_t steps) {
            return cm::raw_advance(cm::IterationState::start(x), steps).current;
        },
        py::arg("x"), py::arg("exact_steps"));
    m.def(
        "advance",
        [](const cm::Natural& x, std::uint64_t max_steps) {
            auto s = cm::advance(cm::IterationState::start(x), max_steps);
            return py::make_tuple(s.current, s.steps);
        },
        py::arg("x"), py::arg("max_steps"), "Returns (current, steps_taken).");
    m.def("trace", &cm::trace, py::arg("x"), py::arg("max_entries"));

    py::class_<cm::CatalogEntry>(m, "CatalogEntry")
        .def_readonly("rank", &cm::CatalogEntry::rank)
        .def_readonly("exponent", &cm::CatalogEntry::exponent)
        .def_readonly("printed_exponent", &cm::CatalogEntry::printed_exponent)
        .def_readonly("reference_d", &cm::CatalogEntry::reference_d)
        .def_readonly("reference_ratio", &cm::CatalogEntry::reference_ratio);
    m.def("catalog", [] {
        auto rows = cm::catalog();
        return std::vector<cm::CatalogEntry>(rows.begin(), rows.end());
    });
    m.def("catalog_entry", &cm::catalog_entry, py::arg("rank"), py::return_value_policy::copy);
    m.def("mersenne_number", &cm::mersenne_number, py::arg("n"));
    m.def("is_prime", &cm::is_prime, py::arg("n"));
    m.def("next_prime", &cm::next_prime, py::arg("n"));
    m.def("lucas_lehmer", &cm::lucas_lehmer, py::arg("p"), py::call_guard<py::gil_scoped_release>());

    py::class_<cm::FitResult>(m, "FitResult")
        .def_readonly("intercept", &cm::FitResult::intercept)
        .def_readonly("slope", &cm::FitResult::slope)
        .def_readonly("rms_residual", &cm::FitResult::rms_residual);
    m.def("random_path_rate", &cm::random_path_rate);
    m.def("mersenne_slope", &cm::mersenne_slope);
    m.def("heuristic_path_length", &cm::heuristic_path_length, py::arg("ln_n"));
    m.def("mersenne_heuristic", &cm::mersenne_heuristic, py::arg("n"));
    m.def("verify_transit_lemma", &cm::verify_transit_lemma, py::arg("n"));
    m.def(
        "fit_loglog",
        [](const std::vector<std::pair<int, std::uint64_t>>& points) {
            std::vector<cm::RankExponent> entries;
            for (auto [k, n] : points) entries.push_back({k, n});
            return cm::fit_loglog(entries);
        },
        py::arg("points"), "Least squares of log2(n) on rank k over (k, n) pairs.");

    py::class_<cm::RatioStats>(m, "RatioStats")
        .def_readonly("count", &cm::RatioStats::count)
        .def_readonly("mean", &cm::RatioStats::mean)
        .def_readonly("sample_variance", &cm::RatioStats::sample_variance);
    m.def(
        "ratio_stats",
        [](const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
            std::vector<cm::ExponentPathLength> data;
            for (auto [n, d] : pairs) data.push_back({n, d});
            return cm::ratio_stats(data);
        },
        py::arg("pairs"));
    m.def(
        "reference_pairs",
        [](const std::string& label) {
            std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
            for (auto p : cm::reference_pairs(cm::parse_label(label))) out.emplace_back(p.exponent, p.d);
            return out;
        },
        py::arg("label"));

    m.def("mersenne_set", [](int from, int to) { return cm::mersenne_set(from, to).indices; }, py::arg("from_rank"),
          py::arg("to_rank"));
    m.def(
        "generate_set_A",
        [](const std::vector<std::uint64_t>& base) {
            return cm::generate_set_A({cm::SetLabel::Mersenne, base, cm::Provenance::Fixture}).indices;
        },
        py::arg("base"));
    m.def("generate_set_B", [](int from, int to) { return cm::generate_set_B(from, to).indices; },
          py::arg("from_rank"), py::arg("to_rank"));
    m.def("fixture_set_C", [] { return cm::fixture_set_C().indices; });
    m.def("fixture_set_D", [] { return cm::fixture_set_D().indices; });

    py::class_<cm::ScanRecord>(m, "ScanRecord")
        .def_readonly("exponent", &cm::ScanRecord::exponent)
        .def_readonly("is_prime_index", &cm::ScanRecord::is_prime_index)
        .def_readonly("d", &cm::ScanRecord::d)
        .def_readonly("ratio", &cm::ScanRecord::ratio);
    m.def("scan_ratios", &cm::scan_ratios, py::arg("center"), py::arg("count_each_side"), py::arg("stride") = 5,
          py::arg("primes_only") = true, py::arg("jobs") = 1, py::arg("cycle_guard") = cm::kDefaultCycleGuard,
          py::call_guard<py::gil_scoped_release>());

    m.def(
        "parse_expression",
        [](const std::string& text) {
            auto e = cm::parse_expression(text);
            static const char* kinds[] = {"decimal", "power_of_two", "mersenne_by_exponent", "mersenne_by_rank"};
            return py::make_tuple(kinds[static_cast<int>(e.kind)], e.parameter);
        },
        py::arg("text"), "Returns (kind, parameter).");
    m.def("evaluate", [](const std::string& text) { return cm::evaluate(cm::parse_expression(text)); },
          py::arg("text"));

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
