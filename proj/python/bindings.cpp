#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sumsetdim/classify.hpp"
#include "sumsetdim/cli.hpp"
#include "sumsetdim/dimension.hpp"
#include "sumsetdim/matching.hpp"

namespace py = pybind11;
using namespace sumsetdim;

namespace {

Rational to_rational(const py::handle& obj) { return parse_rational(py::str(obj).cast<std::string>()); }

py::object to_fraction(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_string(q));
}

DigitalSet to_digits(const std::vector<std::vector<py::object>>& blocks, Source source) {
  std::vector<Block> out;
  for (const auto& b : blocks) {
    std::vector<Rational> digits;
    for (const auto& d : b) digits.push_back(to_rational(d));
    out.emplace_back(std::move(digits));
  }
  return DigitalSet(std::move(out), source);
}

py::tuple to_tuple(const Block& b) {
  py::tuple t(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) t[i] = to_fraction(b[i]);
  return t;
}

py::dict matchings(const std::vector<std::vector<py::object>>& blocks1,
                   const std::vector<std::vector<py::object>>& blocks2, std::size_t lmax, std::size_t cap) {
  EnumerationOptions opt;
  opt.candidate_cap = cap;
  MatchingSet ms = matchings_up_to(to_digits(blocks1, Source::First), to_digits(blocks2, Source::Second), lmax, opt);
  py::dict out;
  for (const auto& [len, blocks] : ms.by_length) {
    py::list xs;
    for (const auto& b : blocks) xs.append(to_tuple(b));
    out[py::int_(len)] = xs;
  }
  return out;
}

py::dict classify(const std::vector<std::vector<py::object>>& blocks1,
                  const std::vector<std::vector<py::object>>& blocks2) {
  StructureClass sc = classify_structure(to_digits(blocks1, Source::First), to_digits(blocks2, Source::Second));
  py::dict out;
  out["structure"] = sc.tag == StructureTag::SelfSimilar ? "SelfSimilar" : "IIFSAttractor";
  out["dropped_blocks"] = sc.dropped_blocks;
  if (sc.tag == StructureTag::SelfSimilar) {
    py::list maps;
    for (const auto& b : sc.finite_ifs.all()) maps.append(to_tuple(b));
    out["maps"] = maps;
    out["length_bound"] = sc.length_bound;
  }
  return out;
}

py::dict dimension_of(const py::object& base, const std::vector<std::vector<py::object>>& blocks1,
                      const std::vector<std::vector<py::object>>& blocks2, std::size_t lmax, double tol) {
  Base b(to_rational(base));
  DimensionOptions opt;
  opt.lmax = lmax;
  opt.tol = tol;
  DimensionResult r = dimension({b, to_digits(blocks1, Source::First)}, {b, to_digits(blocks2, Source::Second)}, opt);
  py::dict out;
  out["tag"] = to_string(r.tag);
  out["value"] = r.value;
  out["lo"] = r.lo;
  out["hi"] = r.hi;
  out["structure"] = r.structure;
  out["osc_method"] = r.certificates.osc_method;
  out["lmax"] = r.certificates.lmax;
  out["tail_bound"] = r.certificates.tail_bound;
  out["summary"] = r.certificates.summary;
  out["notes"] = r.certificates.notes;
  out["cap_hit"] = r.cap_hit;
  return out;
}

py::tuple run(const std::string& command, const std::string& text, std::optional<std::size_t> lmax,
              std::optional<double> tol, std::optional<std::size_t> depth, std::optional<std::size_t> cap,
              bool machine) {
  RunFlags flags{lmax, tol, depth, cap, machine};
  CommandResult r = run_command_text(command, text, flags);
  return py::make_tuple(r.exit_code, r.out, r.err);
}

}  // namespace

PYBIND11_MODULE(_sumsetdim, m) {
  m.doc() = "Sums of self-similar sets with a common base: Matchings, structure and dimension";

  static py::exception<CapExceeded> cap_error(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CapExceeded& e) {
      cap_error(e.what());
    } catch (const InputError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("matchings", &matchings, py::arg("blocks1"), py::arg("blocks2"), py::arg("lmax"),
        py::arg("cap") = 10'000'000, "Primitive Matchings of length <= lmax, keyed by length.");
  m.def("classify", &classify, py::arg("blocks1"), py::arg("blocks2"),
        "SelfSimilar with its finite map list, or IIFSAttractor.");
  m.def("dimension", &dimension_of, py::arg("base"), py::arg("blocks1"), py::arg("blocks2"), py::arg("lmax") = 40,
        py::arg("tol") = 1e-3, "Hausdorff dimension result as a dict.");
  m.def(
      "moran_root",
      [](const std::vector<int>& lengths, const py::object& base) { return moran_root(lengths, Base(to_rational(base))); },
      py::arg("lengths"), py::arg("base"));
  m.def("run", &run, py::arg("command"), py::arg("text"), py::arg("lmax") = py::none(), py::arg("tol") = py::none(),
        py::arg("depth") = py::none(), py::arg("cap") = py::none(), py::arg("machine") = false,
        "Runs a CLI command on problem text; returns (exit_code, stdout, stderr).");
}
