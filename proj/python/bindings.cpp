#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "rookwalk/asym.hpp"
#include "rookwalk/error.hpp"
#include "rookwalk/guess.hpp"
#include "rookwalk/io.hpp"
#include "rookwalk/repro.hpp"
#include "rookwalk/rook_engine.hpp"
#include "rookwalk/walks.hpp"

namespace py = pybind11;
using namespace rookwalk;

namespace {

// Integers cross the boundary as decimal strings.
py::object to_py(const BigInt& x) { return py::module_::import("builtins").attr("int")(x.get_str()); }

py::list to_py(const std::vector<BigInt>& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

py::object to_py(const BigRat& q) {
  return py::module_::import("fractions").attr("Fraction")(to_py(q.get_num()), to_py(q.get_den()));
}

BigInt from_py(const py::handle& h) {
  BigInt x;
  if (x.set_str(py::str(h).cast<std::string>(), 10) != 0) throw Error("invalid-argument", "not an integer");
  return x;
}

guess::Sequence sequence(const py::iterable& terms, long offset) {
  guess::Sequence s;
  s.offset = offset;
  for (auto t : terms) s.terms.push_back(from_py(t));
  return s;
}

guess::Recurrence parse_rec(const std::string& text) {
  std::istringstream is(text);
  return io::read_recurrence(is);
}

std::string rec_text(const guess::Recurrence& r) {
  std::ostringstream os;
  io::write_recurrence(os, r);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_rookwalk, m) {
  m.doc() = "Rook walk counts, recurrence guessing and asymptotics";

  static py::exception<Error> err(m, "RookwalkError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      err((e.kind() + ": " + e.what()).c_str());
    }
  });

  m.def(
      "diagonal_terms",
      [](int dim, int count, unsigned workers) {
        py::gil_scoped_release nogil;
        auto t = engine::diagonal_terms(dim, count - 1, workers).terms;
        py::gil_scoped_acquire gil;
        return to_py(t);
      },
      py::arg("dim"), py::arg("count"), py::arg("workers") = 1, "a(n, ..., n) for n < count (fast engine)");

  m.def(
      "naive_diagonal",
      [](const std::string& model, int dim, int count) {
        auto box = walks::naive_box(walks::WalkModel::by_name(model, dim),
                                    walks::Point(static_cast<std::size_t>(dim), count - 1));
        return to_py(box.diagonal());
      },
      py::arg("model"), py::arg("dim"), py::arg("count"), "diagonal from the generic dynamic program");

  m.def(
      "slice_table",
      [](int dim, int nmax, int mmax, unsigned workers) {
        auto t = engine::slice_table(dim, nmax, mmax, workers);
        py::list rows;
        for (int n = 0; n <= nmax; ++n) {
          std::vector<BigInt> row(t.values.begin() + n * (mmax + 1), t.values.begin() + (n + 1) * (mmax + 1));
          rows.append(to_py(row));
        }
        return rows;
      },
      py::arg("dim"), py::arg("nmax"), py::arg("mmax"), py::arg("workers") = 1, "rows b(n, 0..mmax)");

  m.def(
      "fixed_n_counts",
      [](int n, int dmax) { return to_py(engine::fixed_n_counts(n, dmax).terms); }, py::arg("n"), py::arg("dmax"),
      "w_n(d) for d = 1 .. dmax");

  m.def(
      "guess",
      [](const py::iterable& terms, int max_order, int max_degree, std::size_t margin, long offset,
         unsigned workers) -> py::object {
        auto r = guess::guess_univariate(sequence(terms, offset), max_order, max_degree, margin, {workers});
        if (!r.found) return py::none();
        return py::str(rec_text(*r.found));
      },
      py::arg("terms"), py::arg("max_order") = 8, py::arg("max_degree") = 40,
      py::arg("margin") = guess::kDefaultMargin, py::arg("offset") = 0, py::arg("workers") = 1,
      "recurrence file text, or None");

  m.def(
      "check",
      [](const std::string& rec, const py::iterable& terms, long offset) -> py::object {
        auto bad = guess::check_recurrence(parse_rec(rec), sequence(terms, offset));
        if (!bad) return py::none();
        return py::int_(*bad);
      },
      py::arg("rec"), py::arg("terms"), py::arg("offset") = 0, "None if it holds, else the first failing n");

  m.def(
      "extend",
      [](const std::string& rec, const py::iterable& seeds, long last, long offset) {
        return to_py(guess::extend_with_recurrence(parse_rec(rec), sequence(seeds, offset), last).terms);
      },
      py::arg("rec"), py::arg("seeds"), py::arg("last"), py::arg("offset") = 0, "terms up to index last");

  m.def(
      "stats",
      [](const std::string& rec) {
        auto s = guess::recurrence_stats(parse_rec(rec));
        py::dict d;
        d["order"] = s.order;
        d["degree"] = s.degree;
        d["maxint"] = s.maxint_digits;
        d["maxint_expanded"] = s.maxint_expanded_digits;
        return d;
      },
      py::arg("rec"));

  m.def(
      "expand",
      [](const std::string& rec, int K) {
        auto e = asym::birkhoff_expand(parse_rec(rec), K);
        py::dict d;
        d["lambda"] = to_py(e.lambda);
        d["theta"] = to_py(e.theta);
        py::list c;
        for (const auto& x : e.c) c.append(to_py(x));
        d["c"] = c;
        return d;
      },
      py::arg("rec"), py::arg("order") = 10, "lambda, theta and [c_1 .. c_K]");

  m.def(
      "alpha", [](int d) { return to_py(asym::leading_constant(d).alpha); }, py::arg("dim"));

  m.def(
      "ratio_check",
      [](const std::string& rec, const py::iterable& terms, int dim, long n, int K, int precision) {
        const auto r = parse_rec(rec);
        auto enc = asym::ratio_check(sequence(terms, 0), asym::birkhoff_expand(r, K), asym::leading_constant(dim), n,
                                     precision);
        py::dict d;
        d["lo"] = enc.lo;
        d["hi"] = enc.hi;
        d["deviation"] = enc.deviation;
        return d;
      },
      py::arg("rec"), py::arg("terms"), py::arg("dim"), py::arg("n"), py::arg("order") = 2,
      py::arg("precision") = 256, "enclosure of the closed-form prediction over a(n)");

  m.def(
      "repro_table",
      [](int dmax) {
        py::list rows;
        for (const auto& r : repro::repro_table(dmax)) {
          py::dict d;
          d["dim"] = r.got.dim;
          d["order"] = r.got.order;
          d["degree"] = r.got.degree;
          d["maxint"] = r.got.maxint_digits;
          d["status"] = std::string(r.status());
          rows.append(d);
        }
        return rows;
      },
      py::arg("dmax"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, errs;
        const int code = cli::run(args, out, errs);
        return py::make_tuple(code, out.str(), errs.str());
      },
      py::arg("args"), "(exit code, stdout, stderr) of one CLI invocation");
}
