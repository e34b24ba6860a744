#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wmpda/classify.hpp"
#include "wmpda/format.hpp"
#include "wmpda/gadgets.hpp"
#include "wmpda/marked.hpp"
#include "wmpda/oracle.hpp"
#include "wmpda/regset.hpp"
#include "wmpda/separator.hpp"
#include "wmpda/wqo.hpp"

namespace py = pybind11;
using namespace wmpda;

namespace {

/// A regset together with the automaton it talks about.
struct PyRegSet {
    std::shared_ptr<Mpda> mpda;
    RegSet set;
};

using MpdaPtr = std::shared_ptr<Mpda>;

Configuration config(const Mpda& m, const std::string& text)
{
    return parse_configuration(m, text);
}

py::dict witness_dict(const Mpda& m, const std::optional<Witness>& w)
{
    py::dict d;
    if (w) {
        d["witness"] = serialize_witness(m, *w);
        d["length"] = w->steps.size();
    } else {
        d["witness"] = py::none();
        d["length"] = py::none();
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_wmpda, mod)
{
    mod.doc() = "Reachability toolkit for weak multi-pushdown automata";

    auto base = py::register_exception<error>(mod, "WmpdaError", PyExc_RuntimeError);
    py::register_exception<parse_error>(mod, "ParseError", base.ptr());
    py::register_exception<precondition_failed>(mod, "PreconditionFailed", base.ptr());

    py::class_<Mpda, MpdaPtr>(mod, "Mpda")
        .def_property_readonly("state_count", &Mpda::state_count)
        .def_property_readonly("stack_count", &Mpda::stack_count)
        .def_property_readonly("rule_count", [](const Mpda& m) { return m.rules().size(); })
        .def("serialize", [](const Mpda& m) { return serialize_mpda(m); })
        .def("normalize_configuration",
             [](const Mpda& m, const std::string& text) { return format_configuration(m, config(m, text)); })
        .def("__eq__", [](const Mpda& a, const Mpda& b) { return a == b; });

    py::class_<PyRegSet>(mod, "RegSet")
        .def("__contains__", [](const PyRegSet& L, const std::string& c) { return member(L.set, config(*L.mpda, c)); })
        .def("is_empty", [](const PyRegSet& L) { return is_empty(L.set); })
        .def("complement", [](const PyRegSet& L) { return PyRegSet{L.mpda, complement(*L.mpda, L.set)}; })
        .def("pre_image", [](const PyRegSet& L) { return PyRegSet{L.mpda, pre_image(*L.mpda, L.set)}; })
        .def("union", [](const PyRegSet& L, const PyRegSet& M) { return PyRegSet{L.mpda, unite(L.set, M.set)}; })
        .def("intersect",
             [](const PyRegSet& L, const PyRegSet& M) { return PyRegSet{L.mpda, intersect(L.set, M.set)}; })
        .def("issubset", [](const PyRegSet& L, const PyRegSet& M) { return is_subset(*L.mpda, L.set, M.set); })
        .def("members",
             [](const PyRegSet& L, std::size_t max_size) {
                 std::vector<std::string> out;
                 for (const auto& c : enumerate_members(*L.mpda, L.set, max_size))
                     out.push_back(format_configuration(*L.mpda, c));
                 return out;
             },
             py::arg("max_size"))
        .def("serialize", [](const PyRegSet& L) { return serialize_regset(*L.mpda, L.set); });

    mod.def("parse_mpda", [](const std::string& text) { return std::make_shared<Mpda>(parse_mpda(text)); });
    mod.def("parse_regset", [](MpdaPtr m, const std::string& text) { return PyRegSet{m, parse_regset(*m, text)}; });

    mod.def("classify", [](const Mpda& m) {
        py::dict d;
        auto weak = is_weak(m);
        d["weak"] = weak.weak;
        auto sn = is_strongly_normed(m);
        d["strongly_normed"] = sn.strongly_normed;
        d["normed"] = weak.weak ? py::cast(is_normed(m).normed) : py::none();
        return d;
    });

    mod.def("generate", [](const std::string& family) {
        auto inst = generate(family);
        auto m = std::make_shared<Mpda>(std::move(inst.mpda));
        return py::make_tuple(m, format_configuration(*m, inst.source), PyRegSet{m, std::move(inst.target)});
    });

    mod.def(
        "oracle_reach",
        [](const Mpda& m, const std::string& s, const std::string& t, std::size_t max_size, std::size_t max_explored) {
            OracleBudget b;
            b.max_config_size = max_size;
            b.max_explored = max_explored;
            auto v = bfs_reach(m, config(m, s), config(m, t), b);
            auto d = witness_dict(m, v.witness);
            d["status"] = status_name(v.status);
            return d;
        },
        py::arg("mpda"), py::arg("source"), py::arg("target"), py::arg("max_size") = 16,
        py::arg("max_explored") = 1'000'000);

    mod.def("decide_wqo", [](const Mpda& m, const std::string& s, const std::string& t) {
        return decide_wqo(m, config(m, s), config(m, t)).reachable;
    });

    mod.def("decide_marked", [](const Mpda& m, const std::string& s, const std::string& t) {
        auto source = config(m, s);
        auto v = decide_marked(m, source, config(m, t));
        std::optional<Witness> w;
        if (v.reachable)
            w = reconstruct(m, source, *v.path, is_strongly_normed(m).cancel);
        auto d = witness_dict(m, w);
        d["reachable"] = v.reachable;
        d["bound"] = v.bound;
        return d;
    });

    mod.def(
        "decide_separator",
        [](const PyRegSet& L, const PyRegSet& K, bool require_strongly_normed) {
            SeparatorBudget b;
            b.require_strongly_normed = require_strongly_normed;
            auto v = decide_separator(*L.mpda, L.set, K.set, b);
            auto d = witness_dict(*L.mpda, v.witness);
            d["status"] = v.status == SeparatorStatus::reachable     ? "reachable"
                          : v.status == SeparatorStatus::unreachable ? "unreachable"
                                                                     : "unknown";
            d["certificate"] = v.certificate ? py::cast(PyRegSet{L.mpda, v.certificate->sep}) : py::none();
            return d;
        },
        py::arg("source"), py::arg("target"), py::arg("require_strongly_normed") = true);

    mod.def("replay", [](const Mpda& m, const std::string& witness) {
        return format_configuration(m, replay(m, parse_witness(m, witness)));
    });
}
