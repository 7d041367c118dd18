#include "rookwalk/walks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "rookwalk/error.hpp"

namespace rookwalk::walks {

WalkModel::WalkModel(int dim, std::vector<Point> steps, std::string name)
    : dim_(dim), steps_(std::move(steps)), name_(std::move(name)) {
  if (dim_ < 1) throw Error("invalid-model", "dimension must be positive");
  for (const auto& s : steps_) {
    if (static_cast<int>(s.size()) != dim_) throw Error("invalid-model", "step vector length differs from dimension");
    bool nonzero = false;
    for (int x : s) {
      if (x != 0 && x != 1) throw Error("invalid-model", "step entries must be 0 or 1");
      nonzero |= x == 1;
    }
    if (!nonzero) throw Error("invalid-model", "zero step vector");
  }
  std::sort(steps_.begin(), steps_.end());
  steps_.erase(std::unique(steps_.begin(), steps_.end()), steps_.end());
}

WalkModel WalkModel::rook(int dim) {
  if (dim < 1) throw Error("invalid-model", "dimension must be positive");
  std::vector<Point> steps;
  for (int k = 0; k < dim; ++k) {
    Point v(static_cast<std::size_t>(dim), 0);
    v[static_cast<std::size_t>(k)] = 1;
    steps.push_back(v);
  }
  return WalkModel(dim, std::move(steps), "rook");
}

WalkModel WalkModel::queen(int dim) {
  if (dim < 1) throw Error("invalid-model", "dimension must be positive");
  if (dim > 20) throw Error("invalid-model", "queen model limited to dimension 20");
  std::vector<Point> steps;
  for (unsigned mask = 1; mask < (1u << dim); ++mask) {
    Point v(static_cast<std::size_t>(dim), 0);
    for (int k = 0; k < dim; ++k) v[static_cast<std::size_t>(k)] = (mask >> k) & 1u;
    steps.push_back(v);
  }
  return WalkModel(dim, std::move(steps), "queen");
}

WalkModel WalkModel::by_name(const std::string& name, int dim) {
  if (name == "rook") return rook(dim);
  if (name == "queen") return queen(dim);
  throw Error("invalid-model", "unknown model '" + name + "'");
}

bool WalkModel::permutation_symmetric() const {
  // Adjacent transpositions generate the symmetric group.
  for (int k = 0; k + 1 < dim_; ++k) {
    std::vector<Point> swapped = steps_;
    for (auto& s : swapped) std::swap(s[static_cast<std::size_t>(k)], s[static_cast<std::size_t>(k) + 1]);
    std::sort(swapped.begin(), swapped.end());
    if (swapped != steps_) return false;
  }
  return true;
}

CountTable::CountTable(Point bounds) : bounds_(std::move(bounds)) {
  std::size_t total = 1;
  strides_.assign(bounds_.size(), 1);
  for (std::size_t k = bounds_.size(); k-- > 0;) {
    if (bounds_[k] < 0) throw Error("invalid-bounds", "bounds must be nonnegative");
    strides_[k] = total;
    total *= static_cast<std::size_t>(bounds_[k]) + 1;
  }
  values_.resize(total);
}

std::size_t CountTable::index(const Point& p) const {
  std::size_t i = 0;
  for (std::size_t k = 0; k < bounds_.size(); ++k) i += static_cast<std::size_t>(p[k]) * strides_[k];
  return i;
}

Point CountTable::point(std::size_t index) const {
  Point p(bounds_.size());
  for (std::size_t k = 0; k < bounds_.size(); ++k) {
    p[k] = static_cast<int>(index / strides_[k]);
    index %= strides_[k];
  }
  return p;
}

bool CountTable::contains(const Point& p) const {
  if (p.size() != bounds_.size()) return false;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] < 0 || p[k] > bounds_[k]) return false;
  return true;
}

std::vector<BigInt> CountTable::diagonal() const {
  std::vector<BigInt> out;
  if (bounds_.empty()) return out;
  const int top = *std::min_element(bounds_.begin(), bounds_.end());
  for (int n = 0; n <= top; ++n) out.push_back(at(Point(bounds_.size(), n)));
  return out;
}

std::size_t naive_box_memory_estimate(const WalkModel& model, const Point& bounds) {
  double cells = 1;
  long total = 0;
  for (int b : bounds) {
    cells *= static_cast<double>(b) + 1;
    total += b;
  }
  const double value_bits = static_cast<double>(total) * std::log2(static_cast<double>(model.steps().size()) + 1) + 64;
  const double per_value = sizeof(BigInt) + 16 + std::ceil(value_bits / 64) * 8;
  const double bytes = cells * per_value * (1.0 + static_cast<double>(model.steps().size()));
  return bytes > 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(bytes);
}

std::size_t memory_limit_bytes() {
  if (const char* env = std::getenv("ROOKWALK_MEMORY_LIMIT_MB")) {
    char* end = nullptr;
    unsigned long long mb = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(mb) << 20;
  }
  return std::size_t{4096} << 20;
}

CountTable naive_box(const WalkModel& model, const Point& bounds, std::optional<std::size_t> limit_bytes) {
  if (static_cast<int>(bounds.size()) != model.dim())
    throw Error("dimension-mismatch", "bounds length " + std::to_string(bounds.size()) + " differs from model dimension " +
                                          std::to_string(model.dim()));
  for (int b : bounds)
    if (b < 0) throw Error("invalid-bounds", "bounds must be nonnegative");
  const std::size_t need = naive_box_memory_estimate(model, bounds);
  const std::size_t limit = limit_bytes.value_or(memory_limit_bytes());
  if (need > limit) {
    std::ostringstream os;
    os << "naive box needs about " << (need >> 20) << " MB, limit is " << (limit >> 20) << " MB";
    throw Error("memory-budget", os.str());
  }

  CountTable table(bounds);
  const auto& steps = model.steps();
  // running[s][p] = sum_{i >= 1} a(p - i * step_s)
  std::vector<std::vector<BigInt>> running(steps.size(), std::vector<BigInt>(table.size()));
  std::vector<long> step_offset(steps.size(), 0);
  for (std::size_t s = 0; s < steps.size(); ++s) {
    step_offset[s] = static_cast<long>(table.index(steps[s]));
  }

  Point p(bounds.size(), 0);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    BigInt& value = table.at(idx);
    if (idx == 0) {
      value = 1;
    } else {
      value = 0;
      for (std::size_t s = 0; s < steps.size(); ++s) value += running[s][idx];
    }
    // Propagate into the successor along each step, if it lies in the box.
    for (std::size_t s = 0; s < steps.size(); ++s) {
      bool inside = true;
      for (std::size_t k = 0; k < bounds.size(); ++k)
        if (p[k] + steps[s][k] > bounds[k]) {
          inside = false;
          break;
        }
      if (!inside) continue;
      const std::size_t next = idx + static_cast<std::size_t>(step_offset[s]);
      running[s][next] = value + running[s][idx];
    }
    // Advance the odometer.
    for (std::size_t k = bounds.size(); k-- > 0;) {
      if (++p[k] <= bounds[k]) break;
      p[k] = 0;
    }
  }
  return table;
}

BigInt naive_count(const WalkModel& model, const Point& target) {
  if (static_cast<int>(target.size()) != model.dim())
    throw Error("dimension-mismatch", "target length " + std::to_string(target.size()) + " differs from model dimension " +
                                          std::to_string(model.dim()));
  return naive_box(model, target).at(target);
}

namespace {

MultiPoly multiply(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Point e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

void add_into(MultiPoly& a, const MultiPoly& b, int sign) {
  for (const auto& [e, c] : b) a[e] += sign * c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

DenominatorRecurrence denominator_recurrence(const WalkModel& model) {
  const std::size_t d = static_cast<std::size_t>(model.dim());
  const Point zero(d, 0);
  const auto& steps = model.steps();
  auto one_minus = [&](const Point& v) {
    MultiPoly f;
    f[zero] = 1;
    f[v] = -1;
    return f;
  };
  // q = prod_v (1 - x^v) - sum_v x^v prod_{w != v} (1 - x^w)
  MultiPoly p;
  p[zero] = 1;
  for (const auto& v : steps) p = multiply(p, one_minus(v));
  MultiPoly q = p;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    MultiPoly term;
    term[steps[s]] = 1;
    for (std::size_t t = 0; t < steps.size(); ++t)
      if (t != s) term = multiply(term, one_minus(steps[t]));
    add_into(q, term, -1);
  }
  return DenominatorRecurrence{model.dim(), std::move(p), std::move(q)};
}

BigInt DenominatorRecurrence::residual(const CountTable& table, const Point& n) const {
  BigInt acc = 0;
  Point src(n.size());
  for (const auto& [e, c] : denominator) {
    bool negative = false;
    for (std::size_t k = 0; k < n.size(); ++k) {
      src[k] = n[k] - e[k];
      negative |= src[k] < 0;
    }
    if (negative) continue;
    acc += c * table.at(src);
  }
  return acc;
}

BigInt DenominatorRecurrence::numerator_coeff(const Point& n) const {
  auto it = numerator.find(n);
  return it == numerator.end() ? BigInt(0) : it->second;
}

void write_tsv(std::ostream& os, const CountTable& table) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    Point p = table.point(i);
    for (int x : p) os << x << '\t';
    os << table.at(i).get_str() << '\n';
  }
}

}  // namespace rookwalk::walks
