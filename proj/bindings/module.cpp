#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wbr/classify.hpp"
#include "wbr/cli.hpp"
#include "wbr/errors.hpp"
#include "wbr/transfer.hpp"
#include "wbr/verify.hpp"

namespace py = pybind11;

namespace {

wbr::PosetPtr poset_from_json_str(const std::string& doc) {
    return wbr::GroupPoset::from_json(nlohmann::json::parse(doc));
}

std::string orbit_sum_json(const std::string& poset_doc, const std::string& label) {
    auto poset = poset_from_json_str(poset_doc);
    return wbr::orbit_sum(poset, poset->position(label)).univariate().to_json().dump();
}

std::string structure_table_json(const std::string& poset_doc) {
    return wbr::structure_table(poset_from_json_str(poset_doc)).to_json().dump();
}

std::string ghost_json(long long q, const std::string& vector_doc) {
    wbr::RingVector v = wbr::RingVector::from_json(nlohmann::json::parse(vector_doc));
    wbr::RingVector g = v.kind == wbr::VecKind::Witt ? wbr::ghost_witt(q, v) : wbr::ghost_necklace(q, v);
    return g.to_json().dump();
}

std::string witt_op_json(const std::string& op, long long q, const std::string& a_doc,
                         const std::string& b_doc) {
    wbr::RingVector a = wbr::RingVector::from_json(nlohmann::json::parse(a_doc));
    wbr::RingVector b = wbr::RingVector::from_json(nlohmann::json::parse(b_doc));
    if (op == "add") return wbr::witt_add(q, a, b).to_json().dump();
    if (op == "mul") return wbr::witt_mul(q, a, b).to_json().dump();
    throw wbr::ValidationError("op must be add or mul");
}

std::string classify_json(const std::string& poset_doc, long long q, long long r) {
    auto poset = poset_from_json_str(poset_doc);
    nlohmann::json out = wbr::strict_iso_over_Z(poset, q, r).to_json();
    out["transfer"] = wbr::solve_transfer(poset, q, r).to_json()["transfer"];
    return out.dump();
}

std::string lenart_json(long long r, long long n, long long d) {
    return wbr::lenart_Q(r, n, d).to_json().dump();
}

bool verify_suite(const std::string& name) {
    for (const auto& rep : wbr::run_suites(name, wbr::VerifyParams{}))
        if (!rep.pass()) return false;
    return true;
}

py::tuple run_cli_py(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = wbr::run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "q-deformed Witt-Burnside rings: exact necklace/ghost/transfer computations";
    m.def("cyclic_poset_json",
          [](long long n) {
              std::set<long long> ds;
              for (long long d = 1; d <= n; ++d)
                  if (n % d == 0) ds.insert(d);
              return wbr::GroupPoset::cyclic(ds)->to_json().dump();
          },
          py::arg("n"), "divisor poset of n as canonical JSON");
    m.def("abelian_poset_json",
          [](const std::vector<long long>& inv) {
              return wbr::GroupPoset::finite_abelian(inv)->to_json().dump();
          },
          py::arg("invariant_factors"));
    m.def("orbit_sum_json", &orbit_sum_json, py::arg("poset_json"), py::arg("label"),
          "univariate orbit-sum polynomial M^q(x, V) as JSON");
    m.def("qword_aperiodic_count", &wbr::qword_aperiodic_count, py::arg("q"), py::arg("m"), py::arg("n"));
    m.def("structure_table_json", &structure_table_json, py::arg("poset_json"));
    m.def("ghost_json", &ghost_json, py::arg("q"), py::arg("vector_json"));
    m.def("witt_op_json", &witt_op_json, py::arg("op"), py::arg("q"), py::arg("a_json"), py::arg("b_json"));
    m.def("classify_json", &classify_json, py::arg("poset_json"), py::arg("q"), py::arg("r"));
    m.def("lenart_json", &lenart_json, py::arg("r"), py::arg("n"), py::arg("d"));
    m.def("verify_suite", &verify_suite, py::arg("name"),
          "run a named verification suite; True iff every check passes");
    m.def("run_cli", &run_cli_py, py::arg("args"), "invoke the CLI in-process; (code, stdout, stderr)");
}
