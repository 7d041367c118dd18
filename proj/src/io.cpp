#include "rookwalk/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "rookwalk/error.hpp"

namespace rookwalk::io {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  bool next(std::string& line) {
    if (!std::getline(is_, line)) return false;
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  // Next line that is neither blank nor a '#' comment.
  bool next_content(std::string& line) {
    while (next(line))
      if (line.find_first_not_of(" \t") != std::string::npos && line[line.find_first_not_of(" \t")] != '#') return true;
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("parse", "line " + std::to_string(number_) + ": " + what);
  }
  long number() const { return number_; }

 private:
  std::istream& is_;
  long number_ = 0;
};

std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

BigInt parse_int(const std::string& tok, const LineReader& r) {
  BigInt x;
  const bool digits = !tok.empty() && tok.find_first_not_of("0123456789", tok[0] == '-' || tok[0] == '+' ? 1 : 0) ==
                                          std::string::npos && tok.size() > (tok[0] == '-' || tok[0] == '+' ? 1u : 0u);
  if (!digits || x.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0) r.fail("not an integer: '" + tok + "'");
  return x;
}

long parse_long(const std::string& tok, const LineReader& r) {
  BigInt x = parse_int(tok, r);
  if (!x.fits_slong_p()) r.fail("integer out of range: '" + tok + "'");
  return x.get_si();
}

// "key: rest" with the exact key.
std::string expect_field(LineReader& r, const std::string& key) {
  std::string line;
  if (!r.next(line)) r.fail("missing '" + key + ":' line");
  const std::string prefix = key + ":";
  if (line.compare(0, prefix.size(), prefix) != 0) r.fail("expected '" + prefix + "'");
  std::string rest = line.substr(prefix.size());
  return rest;
}

void write_coeffs(std::ostream& os, const std::vector<BigInt>& c) {
  if (c.empty()) {
    os << " 0";
    return;
  }
  for (const auto& x : c) os << ' ' << x.get_str();
}

}  // namespace

void write_bfile(std::ostream& os, const guess::Sequence& seq) {
  for (std::size_t i = 0; i < seq.terms.size(); ++i)
    os << seq.offset + static_cast<long>(i) << ' ' << seq.terms[i].get_str() << '\n';
}

guess::Sequence read_bfile(std::istream& is) {
  LineReader r(is);
  guess::Sequence seq;
  std::string line;
  bool first = true;
  while (r.next_content(line)) {
    auto tok = split(line);
    if (tok.size() != 2) r.fail("expected 'index value'");
    const long idx = parse_long(tok[0], r);
    if (idx < 0) r.fail("negative index " + tok[0]);
    if (first) {
      seq.offset = idx;
      first = false;
    } else if (idx != seq.last() + 1) {
      r.fail("index " + tok[0] + " does not follow " + std::to_string(seq.last()));
    }
    seq.terms.push_back(parse_int(tok[1], r));
  }
  if (first) throw Error("parse", "b-file has no terms");
  return seq;
}

void write_recurrence(std::ostream& os, const guess::Recurrence& rec) {
  os << "RECURRENCE v1\n";
  os << "order: " << rec.order() << '\n';
  os << "var: n\n";
  os << "valid-from: " << rec.valid_from << '\n';
  for (int i = 0; i <= rec.order(); ++i) {
    os << "coeff " << i << ':';
    write_coeffs(os, rec.coeffs[static_cast<std::size_t>(i)].coeffs());
    os << '\n';
  }
}

namespace {

guess::Recurrence read_univariate_body(LineReader& r, long order) {
  guess::Recurrence rec;
  auto var = split(expect_field(r, "var"));
  if (var.size() != 1 || var[0] != "n") r.fail("expected 'var: n'");
  auto vf = split(expect_field(r, "valid-from"));
  if (vf.size() != 1) r.fail("expected one valid-from index");
  rec.valid_from = parse_long(vf[0], r);
  for (long i = 0; i <= order; ++i) {
    auto tok = split(expect_field(r, "coeff " + std::to_string(i)));
    if (tok.empty()) r.fail("coefficient list is empty");
    std::vector<BigInt> c;
    for (const auto& t : tok) c.push_back(parse_int(t, r));
    rec.coeffs.emplace_back(std::move(c));
  }
  if (rec.coeffs.back().is_zero()) r.fail("leading coefficient is zero");
  return rec;
}

long read_header(LineReader& r) {
  std::string line;
  if (!r.next_content(line)) return -1;
  if (line != "RECURRENCE v1") r.fail("expected 'RECURRENCE v1'");
  auto tok = split(expect_field(r, "order"));
  if (tok.size() != 1) r.fail("expected one order");
  const long order = parse_long(tok[0], r);
  if (order < 0 || order > 100000) r.fail("order out of range");
  return order;
}

}  // namespace

guess::Recurrence read_recurrence(std::istream& is) {
  LineReader r(is);
  const long order = read_header(r);
  if (order < 0) throw Error("parse", "empty recurrence file");
  if (order < 1) r.fail("order must be positive");
  guess::Recurrence rec = read_univariate_body(r, order);
  std::string extra;
  if (r.next_content(extra)) r.fail("unexpected content after the recurrence");
  return rec;
}

void write_bivariate(std::ostream& os, const std::vector<guess::BivariateRecurrence>& recs) {
  for (const auto& rec : recs) {
    int order = 0;
    for (const auto& [i, j] : rec.support) order = std::max(order, i + j);
    os << "RECURRENCE v1\n";
    os << "order: " << order << '\n';
    os << "vars: n m\n";
    os << "support:";
    for (const auto& [i, j] : rec.support) os << ' ' << i << ',' << j;
    os << '\n';
    os << "valid-from: " << rec.valid_n << ' ' << rec.valid_m << '\n';
    os << "degree: " << rec.degree << '\n';
    const auto mons = guess::graded_monomials(rec.degree);
    for (std::size_t k = 0; k < rec.support.size(); ++k) {
      os << "coeff " << k << ':';
      for (const auto& [a, b] : mons) os << ' ' << rec.coeffs[k].coeff(a, b).get_str();
      os << '\n';
    }
  }
}

std::vector<guess::BivariateRecurrence> read_bivariate(std::istream& is) {
  LineReader r(is);
  std::vector<guess::BivariateRecurrence> out;
  for (long order; (order = read_header(r)) >= 0;) {
    guess::BivariateRecurrence rec;
    auto vars = split(expect_field(r, "vars"));
    if (vars.size() != 2 || vars[0] != "n" || vars[1] != "m") r.fail("expected 'vars: n m'");
    for (const auto& t : split(expect_field(r, "support"))) {
      const auto comma = t.find(',');
      if (comma == std::string::npos) r.fail("support point '" + t + "' is not i,j");
      const long i = parse_long(t.substr(0, comma), r), j = parse_long(t.substr(comma + 1), r);
      if (i < 0 || j < 0 || i > 100000 || j > 100000) r.fail("support shift out of range");
      rec.support.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    if (rec.support.empty()) r.fail("empty support");
    if (!std::is_sorted(rec.support.begin(), rec.support.end()) ||
        std::adjacent_find(rec.support.begin(), rec.support.end()) != rec.support.end())
      r.fail("support must be strictly increasing");
    int max_shift = 0;
    for (const auto& [i, j] : rec.support) max_shift = std::max(max_shift, i + j);
    if (max_shift != order) r.fail("order does not match the support");
    auto vf = split(expect_field(r, "valid-from"));
    if (vf.size() != 2) r.fail("expected 'valid-from: n0 m0'");
    rec.valid_n = parse_long(vf[0], r);
    rec.valid_m = parse_long(vf[1], r);
    auto dg = split(expect_field(r, "degree"));
    if (dg.size() != 1) r.fail("expected one degree");
    const long degree = parse_long(dg[0], r);
    if (degree < 0 || degree > 1000) r.fail("degree out of range");
    rec.degree = static_cast<int>(degree);
    const auto mons = guess::graded_monomials(rec.degree);
    for (std::size_t k = 0; k < rec.support.size(); ++k) {
      auto tok = split(expect_field(r, "coeff " + std::to_string(k)));
      if (tok.size() != mons.size()) r.fail("expected " + std::to_string(mons.size()) + " coefficients");
      BiPoly p;
      for (std::size_t t = 0; t < mons.size(); ++t) p.set(mons[t].first, mons[t].second, parse_int(tok[t], r));
      rec.coeffs.push_back(std::move(p));
    }
    if (rec.coeffs.back().is_zero()) r.fail("corner coefficient is zero");
    out.push_back(std::move(rec));
  }
  if (out.empty()) throw Error("parse", "no recurrence in file");
  return out;
}

engine::SliceTable read_slice_tsv(std::istream& is) {
  LineReader r(is);
  std::map<std::pair<long, long>, BigInt> cells;
  long max_n = -1, max_m = -1;
  std::string line;
  while (r.next_content(line)) {
    auto tok = split(line);
    if (tok.size() != 3) r.fail("expected 'n m value'");
    const long n = parse_long(tok[0], r), m = parse_long(tok[1], r);
    if (n < 0 || m < 0) r.fail("negative index");
    if (!cells.emplace(std::make_pair(n, m), parse_int(tok[2], r)).second) r.fail("duplicate cell");
    max_n = std::max(max_n, n);
    max_m = std::max(max_m, m);
  }
  if (cells.empty()) throw Error("parse", "table has no cells");
  if (static_cast<std::size_t>((max_n + 1) * (max_m + 1)) != cells.size())
    throw Error("parse", "table does not cover the rectangle up to (" + std::to_string(max_n) + ", " +
                             std::to_string(max_m) + ")");
  engine::SliceTable t;
  t.max_n = static_cast<int>(max_n);
  t.max_m = static_cast<int>(max_m);
  t.values.resize(cells.size());
  for (auto& [k, v] : cells) t.at(static_cast<int>(k.first), static_cast<int>(k.second)) = std::move(v);
  return t;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("io", "cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("io", "cannot write '" + path + "'");
    f << content;
    if (!f.flush()) throw Error("io", "cannot write '" + path + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("io", "cannot write '" + path + "'");
  }
}

}  // namespace rookwalk::io
