#include "bicomm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "bicomm/bmo.hpp"
#include "bicomm/commutator.hpp"
#include "bicomm/dense_oracle.hpp"
#include "bicomm/error.hpp"
#include "bicomm/fft.hpp"
#include "bicomm/journe.hpp"
#include "bicomm/random.hpp"
#include "bicomm/transforms.hpp"
#include "bicomm/wavelets.hpp"

#ifndef BICOMM_VERSION
#define BICOMM_VERSION "0.0.0"
#endif

namespace bicomm::experiments {

using io::CsvTable;
using io::Json;
using Row = std::vector<CsvTable::Value>;

const char* code_version() { return BICOMM_VERSION; }

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"identity-check", "wavelet-audit",  "bmo-scan",
                                              "norm-compare",   "journe-scan",    "decomposition",
                                              "oracle-audit",   "maximal-audit",  "thinning-audit",
                                              "plotdata"};
  return names;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

namespace {

struct Defaults {
  std::size_t grid;
  int resolution;
  int instances;
  double tol;
};

Defaults defaults_for(const std::string& command) {
  if (command == "identity-check") return {256, 4, 100, 1e-10};
  if (command == "wavelet-audit") return {1024, 6, 1, 1e-10};
  if (command == "bmo-scan") return {64, 2, 50, 1e-10};
  if (command == "norm-compare") return {128, 3, 200, 1e-8};
  if (command == "journe-scan") return {1024, 6, 200, 1e-10};
  if (command == "decomposition") return {128, 3, 20, 1e-8};
  if (command == "oracle-audit") return {16, 0, 20, 1e-12};
  if (command == "maximal-audit") return {1024, 6, 500, 1e-10};
  if (command == "thinning-audit") return {1024, 6, 500, 1e-10};
  if (command == "plotdata") return {16, 0, 0, 1e-10};
  fail(ErrorCode::config, "unknown command '" + command + "'");
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(ErrorCode::config, where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail(ErrorCode::config, "unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read_opt(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception& e) {
    fail(ErrorCode::config, std::string("bad value for '") + key + "': " + e.what());
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::config, what);
}

}  // namespace

ExperimentConfig parse_config(const Json& j) {
  reject_unknown(j, {"command", "N", "n", "seed", "instances", "jobs", "family", "params", "plot", "out"}, "config");
  ExperimentConfig c;
  read_opt(j, "command", c.command);
  require(!c.command.empty(), "config needs a 'command'");
  const Defaults d = defaults_for(c.command);

  const bool has_grid = j.contains("N"), has_res = j.contains("n");
  read_opt(j, "N", c.grid);
  read_opt(j, "n", c.resolution);
  if (!has_grid && !has_res) {
    c.grid = d.grid;
    c.resolution = d.resolution;
  } else if (!has_grid) {
    require(c.resolution >= 0 && c.resolution <= 12, "n must lie in [0, 12]");
    c.grid = std::size_t{1} << (c.resolution + 4);
  } else if (!has_res) {
    require(is_power_of_two(c.grid) && c.grid >= 16, "N must be a power of two >= 16");
    c.resolution = std::min(d.resolution, exact_log2(c.grid) - 4);
  }
  require(is_power_of_two(c.grid) && c.grid >= 16, "N must be a power of two >= 16");
  require(c.resolution >= 0 && c.resolution <= exact_log2(c.grid) - 4, "n must satisfy 0 <= n <= log2(N) - 4");
  if (c.command == "oracle-audit") require(c.grid <= 32, "oracle-audit needs N <= 32");

  c.instances = d.instances;
  read_opt(j, "seed", c.seed);
  read_opt(j, "instances", c.instances);
  read_opt(j, "jobs", c.jobs);
  read_opt(j, "out", c.out_dir);
  require(c.instances >= 0, "instances must be nonnegative");
  require(c.jobs >= 1, "jobs must be at least 1");

  c.params.tol = d.tol;
  if (j.contains("params")) {
    const auto& p = j.at("params");
    reject_unknown(p,
                   {"delta", "epsilon", "gamma", "enlargement_threshold", "deltas", "row_counts", "row_density",
                    "row_resolution", "budget", "tol", "max_iter", "restarts", "dual_iters", "max_boxes"},
                   "params");
    auto& q = c.params;
    read_opt(p, "delta", q.delta);
    read_opt(p, "epsilon", q.epsilon);
    if (p.contains("gamma")) q.gamma = p.at("gamma").get<double>();
    if (p.contains("enlargement_threshold")) q.enlargement_threshold = p.at("enlargement_threshold").get<double>();
    read_opt(p, "deltas", q.deltas);
    read_opt(p, "row_counts", q.row_counts);
    read_opt(p, "row_density", q.row_density);
    read_opt(p, "row_resolution", q.row_resolution);
    read_opt(p, "budget", q.budget);
    read_opt(p, "tol", q.tol);
    read_opt(p, "max_iter", q.max_iter);
    read_opt(p, "restarts", q.restarts);
    read_opt(p, "dual_iters", q.dual_iters);
    read_opt(p, "max_boxes", q.max_boxes);
  }
  const auto& q = c.params;
  auto open_unit = [](double x) { return x > 0.0 && x < 1.0; };
  require(open_unit(q.delta), "delta must lie in (0, 1)");
  require(q.epsilon > 0.0, "epsilon must be positive");
  require(!q.gamma || open_unit(*q.gamma), "gamma must lie in (0, 1)");
  require(!q.enlargement_threshold || open_unit(*q.enlargement_threshold), "enlargement_threshold must lie in (0, 1)");
  require(!q.deltas.empty() && std::all_of(q.deltas.begin(), q.deltas.end(), open_unit), "deltas must lie in (0, 1)");
  require(!q.row_counts.empty() && std::all_of(q.row_counts.begin(), q.row_counts.end(), [](int k) { return k >= 2; }),
          "row_counts must be >= 2");
  require(q.row_density > 0.5 && q.row_density < 1.0, "row_density must lie in (1/2, 1)");
  require(q.row_resolution >= 1 && q.row_resolution <= 10, "row_resolution must lie in [1, 10]");
  require(q.budget >= 0, "budget must be nonnegative");
  require(q.tol > 0.0, "tol must be positive");
  require(q.max_iter >= 1, "max_iter must be positive");
  require(q.restarts >= 1 && q.dual_iters >= 1, "restarts and dual_iters must be positive");
  require(q.max_boxes >= 1, "max_boxes must be positive");

  if (j.contains("family")) {
    const auto& f = j.at("family");
    reject_unknown(f, {"kind", "rectangle", "squares", "density", "square_scale", "anisotropy_decay", "path"}, "family");
    std::string kind = "random-carleson";
    read_opt(f, "kind", kind);
    c.family.kind = parse_symbol_family(kind);
    if (f.contains("rectangle")) {
      const auto v = f.at("rectangle").get<std::vector<std::int64_t>>();
      require(v.size() == 4, "family.rectangle must be [j1, k1, j2, k2]");
      require(v[0] >= 0 && v[2] >= 0 && v[1] >= 0 && v[3] >= 0 && v[1] < (std::int64_t{1} << v[0]) &&
                  v[3] < (std::int64_t{1} << v[2]),
              "family.rectangle indices out of range");
      c.family.rectangle = DyadicRectangle(static_cast<int>(v[0]), v[1], static_cast<int>(v[2]), v[3]);
    }
    read_opt(f, "squares", c.family.squares);
    read_opt(f, "density", c.family.density);
    read_opt(f, "square_scale", c.family.square_scale);
    read_opt(f, "anisotropy_decay", c.family.anisotropy_decay);
    read_opt(f, "path", c.family.path);
    require(c.family.kind != SymbolFamily::file || !c.family.path.empty(), "family 'file' needs a path");
  }

  if (j.contains("plot")) {
    const auto& p = j.at("plot");
    reject_unknown(p, {"source", "kind", "x", "y", "bins"}, "plot");
    read_opt(p, "source", c.plot.source);
    read_opt(p, "kind", c.plot.kind);
    read_opt(p, "x", c.plot.x);
    read_opt(p, "y", c.plot.y);
    read_opt(p, "bins", c.plot.bins);
  }
  if (c.command == "plotdata") {
    require(!c.plot.source.empty() && !c.plot.x.empty(), "plotdata needs plot.source and plot.x");
    require(c.plot.kind == "scatter" || c.plot.kind == "histogram", "plot.kind must be scatter or histogram");
    require(c.plot.kind != "scatter" || !c.plot.y.empty(), "scatter plots need plot.y");
    require(c.plot.bins >= 1, "plot.bins must be positive");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  Json j;
  try {
    j = Json::parse(io::read_text(path));
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::config, path + ": " + e.what());
  }
  return parse_config(j);
}

Json canonical(const ExperimentConfig& c) {
  const auto& q = c.params;
  Json params{{"delta", q.delta},
              {"epsilon", q.epsilon},
              {"gamma", q.gamma ? Json(*q.gamma) : Json(nullptr)},
              {"enlargement_threshold", q.enlargement_threshold ? Json(*q.enlargement_threshold) : Json(nullptr)},
              {"deltas", q.deltas},
              {"row_counts", q.row_counts},
              {"row_density", q.row_density},
              {"row_resolution", q.row_resolution},
              {"budget", q.budget},
              {"tol", q.tol},
              {"max_iter", q.max_iter},
              {"restarts", q.restarts},
              {"dual_iters", q.dual_iters},
              {"max_boxes", q.max_boxes}};
  Json family{{"kind", to_string(c.family.kind)},
              {"squares", c.family.squares},
              {"density", c.family.density},
              {"square_scale", c.family.square_scale},
              {"anisotropy_decay", c.family.anisotropy_decay},
              {"path", c.family.path}};
  if (c.family.rectangle) {
    const auto& r = *c.family.rectangle;
    family["rectangle"] = {r.first().scale(), r.first().position(), r.second().scale(), r.second().position()};
  }
  Json out{{"command", c.command}, {"N", c.grid},       {"n", c.resolution}, {"seed", c.seed},
           {"instances", c.instances}, {"family", family}, {"params", params}};
  if (c.command == "plotdata")
    out["plot"] = {{"source", c.plot.source}, {"kind", c.plot.kind}, {"x", c.plot.x}, {"y", c.plot.y}, {"bins", c.plot.bins}};
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const ExperimentConfig& c) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical(c).dump())));
  return buf;
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

namespace {

/// Runs fn(i) for i in [0, count) on `jobs` threads and returns results in
/// instance order. The first failure (lowest instance id) is rethrown with
/// the id attached.
template <class T>
std::vector<T> run_indexed(int count, int jobs, const std::function<T(int)>& fn) {
  std::vector<std::optional<T>> slots(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        slots[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min(jobs, count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (int i = 0; i < count; ++i) {
    if (!errors[static_cast<std::size_t>(i)]) continue;
    try {
      std::rethrow_exception(errors[static_cast<std::size_t>(i)]);
    } catch (const NotConverged& e) {
      throw NotConverged("instance " + std::to_string(i) + ": " + e.what(), e.estimate(), e.gap());
    } catch (const Error& e) {
      throw Error(e.code(), "instance " + std::to_string(i) + ": " + e.what());
    } catch (const std::exception& e) {
      throw Error(ErrorCode::invalid_argument, "instance " + std::to_string(i) + ": " + e.what());
    }
  }
  std::vector<T> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

Rng instance_rng(const ExperimentConfig& c, int i) { return Rng(mix_seed(c.seed, static_cast<std::uint64_t>(i))); }

double relative_residual(const GridSignal2D& a, const GridSignal2D& b) {
  const double scale = std::max(norm2(b), std::numeric_limits<double>::min());
  return norm2(a - b) / scale;
}

double column_max(const CsvTable& t, const std::string& name) {
  const std::size_t col = t.column(name);
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& row : t.rows()) m = std::max(m, std::get<double>(row[col]));
  return m;
}

double column_min(const CsvTable& t, const std::string& name) {
  const std::size_t col = t.column(name);
  double m = std::numeric_limits<double>::infinity();
  for (const auto& row : t.rows()) m = std::min(m, std::get<double>(row[col]));
  return m;
}

std::vector<double> column_values(const CsvTable& t, const std::string& name) {
  const std::size_t col = t.column(name);
  std::vector<double> v;
  for (const auto& row : t.rows()) v.push_back(std::get<double>(row[col]));
  return v;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

Check at_most(std::string name, double value, double limit) {
  return {std::move(name), value, "<=", limit, value <= limit};
}

Check at_least(std::string name, double value, double limit) {
  return {std::move(name), value, ">=", limit, value >= limit};
}

long long ll(long long v) { return v; }

GridSignal2D random_admissible(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n * n);
  for (auto& x : v) x = {rng.normal(), rng.normal()};
  return project_admissible(GridSignal2D(n, std::move(v)));
}

GridSignal2D random_complex(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n * n);
  for (auto& x : v) x = {rng.normal(), rng.normal()};
  return GridSignal2D(n, std::move(v));
}

// ---------------------------------------------------------------------------
// identity-check
// ---------------------------------------------------------------------------

Report identity_check(const ExperimentConfig& c) {
  const std::size_t n = c.grid;
  Report r;
  r.command = c.command;
  r.table = CsvTable({"instance", "basic_residual", "commutator_residual", "two_param_residual", "quarter_margin"});
  const auto rows = run_indexed<Row>(c.instances, c.jobs, [&](int i) -> Row {
    Rng rng = instance_rng(c, i);
    const auto b1 = bandlimited_symbol_1d(rng, n);
    const auto lhs1 = 0.5 * commutator_1d(b1, conj(b1));
    const auto rhs1 = project_halfline(abs_squared(project_halfline(b1, Sign::minus)), Sign::minus) -
                      project_halfline(abs_squared(project_halfline(b1, Sign::plus)), Sign::plus);
    const double basic = norm2(lhs1 - rhs1) / norm2(rhs1);

    const auto b = bandlimited_symbol(rng, n);
    const auto f = random_admissible(rng, n);
    const double comm = relative_residual(commutator_apply(b, f), four_projection_form(b, f));

    auto q = [&](Sign s1, Sign s2) { return project_quadrant(abs_squared(project_quadrant(b, s1, s2)), s1, s2); };
    const auto rhs2 = q(Sign::plus, Sign::plus) - q(Sign::plus, Sign::minus) - q(Sign::minus, Sign::plus) +
                      q(Sign::minus, Sign::minus);
    const double two = relative_residual(0.25 * bracket(b, b), rhs2);

    double margin = std::numeric_limits<double>::infinity();
    for (Sign s1 : {Sign::plus, Sign::minus})
      for (Sign s2 : {Sign::plus, Sign::minus}) {
        const auto sq = abs_squared(project_quadrant(b, s1, s2));
        const double whole = norm2(project_admissible(sq));
        if (whole == 0.0) continue;
        margin = std::min(margin, norm2(project_quadrant(sq, s1, s2)) / whole - 0.25);
      }
    return {ll(i), basic, comm, two, margin};
  });
  for (auto row : rows) r.table.add_row(std::move(row));
  if (r.table.size()) {
    r.checks.push_back(at_most("max basic_residual", column_max(r.table, "basic_residual"), 1e-10));
    r.checks.push_back(at_most("max commutator_residual", column_max(r.table, "commutator_residual"), 1e-9));
    r.checks.push_back(at_most("max two_param_residual", column_max(r.table, "two_param_residual"), 1e-9));
    r.checks.push_back(at_least("min quarter_margin", column_min(r.table, "quarter_margin"), -1e-12));
  }
  return r;
}

// ---------------------------------------------------------------------------
// wavelet-audit
// ---------------------------------------------------------------------------

double spectral_overlap(const GridSignal1D& a, const GridSignal1D& b) {
  const auto sa = spectrum(a), sb = spectrum(b);
  double acc = 0.0, ea = 0.0, eb = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    acc += std::abs(sa[i]) * std::abs(sb[i]);
    ea += std::norm(sa[i]);
    eb += std::norm(sb[i]);
  }
  if (ea == 0.0 || eb == 0.0) return 0.0;
  return acc / std::sqrt(ea * eb);
}

Report wavelet_audit(const ExperimentConfig& c) {
  const std::size_t n = c.grid;
  const int jm = max_admissible_scale(n);
  Report r;
  r.command = c.command;
  r.table = CsvTable({"instance", "check", "scale_a", "scale_b", "value"});
  long long id = 0;
  auto add = [&](const char* check, int a, int b, double v) { r.table.add_row({id++, std::string(check), ll(a), ll(b), v}); };

  std::vector<std::vector<GridSignal1D>> ws(static_cast<std::size_t>(jm + 1));
  for (int j = 0; j <= jm; ++j)
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) ws[static_cast<std::size_t>(j)].push_back(wavelet_sample(DyadicInterval(j, k), n));
  double gram = 0.0;
  for (int a = 0; a <= jm; ++a)
    for (int b = a; b <= jm; ++b) {
      double dev = 0.0;
      const auto& wa = ws[static_cast<std::size_t>(a)];
      const auto& wb = ws[static_cast<std::size_t>(b)];
      for (std::size_t p = 0; p < wa.size(); ++p)
        for (std::size_t q = 0; q < wb.size(); ++q) {
          const double expected = (a == b && p == q) ? 1.0 : 0.0;
          dev = std::max(dev, std::abs(inner(wa[p], wb[q]) - expected));
        }
      add("gram", a, b, dev);
      gram = std::max(gram, dev);
    }

  double profile = std::abs(std::pow(MeyerProfile::magnitude(1.0), 2) + std::pow(MeyerProfile::magnitude(2.0), 2) - 1.0);
  for (int s = 0; s <= 2000; ++s) {
    const double u = 2.0 / 3.0 + (2.0 / 3.0) * s / 2000.0;
    profile = std::max(profile, std::abs(std::pow(MeyerProfile::magnitude(u), 2) + std::pow(MeyerProfile::magnitude(2 * u), 2) - 1.0));
  }
  add("profile", 0, 0, profile);

  double zero = 0.0;
  for (int i = 0; i <= jm; ++i)
    for (int j = i + 2; j <= jm; ++j) {
      double worst = 0.0;
      const std::int64_t pi = std::int64_t{1} << i, pj = std::int64_t{1} << j;
      for (std::int64_t k = 0; k < std::min<std::int64_t>(pi, 4); ++k)
        for (std::int64_t l = 0; l < pj; l += std::max<std::int64_t>(1, pj / 8)) {
          const auto kern = commutator_kernel(DyadicInterval(i, k), DyadicInterval(j, l), n);
          worst = std::max(worst, norm2(kern.kernel));
        }
      add("wij_zero", i, j, worst);
      zero = std::max(zero, worst);
    }

  double ortho = 0.0;
  for (int i = 3; i <= jm; ++i)
    for (int ip = 3; ip + 3 <= i; ++ip) {
      double worst = 0.0;
      for (int j = 0; j + 3 <= i; ++j)
        for (int jp = 0; jp + 3 <= ip; ++jp) {
          const auto a = commutator_kernel(DyadicInterval(i, 1), DyadicInterval(j, 0), n).kernel;
          const auto b = commutator_kernel(DyadicInterval(ip, 2), DyadicInterval(jp, 0), n).kernel;
          worst = std::max(worst, spectral_overlap(a, b));
        }
      add("orthoI", i, ip, worst);
      ortho = std::max(ortho, worst);
    }

  for (int j = 0; j <= jm; ++j) add("decay_constant", j, 5, spatial_decay_constant(DyadicInterval(j, 0), n));

  r.checks.push_back(at_most("gram deviation", gram, 1e-6));
  r.checks.push_back(at_most("wij zero case", zero, 1e-8));
  r.checks.push_back(at_most("orthoI spectral overlap", ortho, 1e-10));
  r.checks.push_back(at_most("profile partition of unity", profile, 1e-12));
  return r;
}

// ---------------------------------------------------------------------------
// bmo-scan
// ---------------------------------------------------------------------------

Report bmo_scan(const ExperimentConfig& c) {
  const bool calibrate = c.resolution <= kExhaustiveResolution;
  std::vector<std::string> header{"instance", "rect_bmo", "product_bmo_lower", "exact", "gain", "witness_measure"};
  if (calibrate) header.insert(header.end(), {"greedy", "calibration"});
  Report r;
  r.command = c.command;
  r.table = CsvTable(header);
  struct Out {
    Row row;
    Json estimate;
    bool certified;
  };
  const auto outs = run_indexed<Out>(c.instances, c.jobs, [&](int i) -> Out {
    Rng rng = instance_rng(c, i);
    const auto sym = make_symbol(c.family, c.grid, c.resolution, rng);
    const auto coeffs = analyze(sym.b, c.resolution);
    const auto rect = rect_bmo(coeffs);
    const auto prod = product_bmo_lower(coeffs, {c.params.budget, true});
    Row row{ll(i), rect.value, prod.value, ll(prod.exact), rect.value > 0 ? prod.value / rect.value : 1.0,
            prod.witness.measure()};
    if (calibrate) {
      const auto greedy = product_bmo_greedy(coeffs, c.params.budget);
      row.push_back(greedy.value);
      row.push_back(prod.value > 0 ? greedy.value / prod.value : 1.0);
    }
    return {std::move(row), io::to_json(prod), certificate_holds(coeffs, prod)};
  });
  Json estimates = Json::array();
  bool certified = true;
  for (const auto& o : outs) {
    r.table.add_row(o.row);
    estimates.push_back(o.estimate);
    certified = certified && o.certified;
  }
  r.files["bmo-scan_estimates.json"] = estimates.dump(1) + "\n";
  r.checks.push_back(at_least("certificates hold", certified ? 1.0 : 0.0, 1.0));
  if (calibrate && r.table.size()) r.checks.push_back(at_least("min calibration", column_min(r.table, "calibration"), 0.75));
  return r;
}

// ---------------------------------------------------------------------------
// norm-compare
// ---------------------------------------------------------------------------

Report norm_compare(const ExperimentConfig& c) {
  Report r;
  r.command = c.command;
  r.table = CsvTable({"instance", "operator_norm", "iterations", "product_bmo_lower", "rect_bmo", "up_ratio", "down_ratio"});
  const auto rows = run_indexed<Row>(c.instances, c.jobs, [&](int i) -> Row {
    Rng rng = instance_rng(c, i);
    const auto sym = make_symbol(c.family, c.grid, c.resolution, rng);
    const auto coeffs = analyze(sym.b, c.resolution);
    const auto nr = operator_norm(sym.b, c.params.tol, c.params.max_iter, rng.next_u64());
    const double bmo = product_bmo_lower(coeffs, {c.params.budget, true}).value;
    if (bmo <= 0.0 || nr.norm <= 0.0) fail(ErrorCode::domain_violation, "degenerate symbol (zero norm)");
    return {ll(i), nr.norm, ll(static_cast<long long>(nr.trace.size())), bmo, rect_bmo(coeffs).value, nr.norm / bmo,
            bmo / nr.norm};
  });
  for (auto row : rows) r.table.add_row(std::move(row));
  r.files["norm-compare_scatter.dat"] = plotdata(r.table, {"", "scatter", "product_bmo_lower", "operator_norm", 20});
  if (r.table.size()) {
    for (const char* name : {"up_ratio", "down_ratio"}) {
      const auto v = column_values(r.table, name);
      const double med = median(v), mx = *std::max_element(v.begin(), v.end());
      r.extra[std::string(name) + "_median"] = med;
      r.extra[std::string(name) + "_max"] = mx;
      r.checks.push_back(at_most(std::string("max/median ") + name, mx / med, 10.0));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// journe-scan
// ---------------------------------------------------------------------------

std::string residue_tag(const DyadicRectangle& r, int stratum, double gamma) {
  const double mu = stratum == 0 ? 1.0 : std::ldexp(1.0, stratum - 1);
  const int d = thinning_modulus(mu, gamma);
  return std::to_string(r.first().scale() % d) + ":" + std::to_string(r.second().scale() % d);
}

Report journe_scan(const ExperimentConfig& c) {
  const double delta = c.params.delta, eps = c.params.epsilon;
  const double gamma = c.params.gamma.value_or(std::cbrt(delta));
  Report r;
  r.command = c.command;
  r.table = CsvTable({"instance", "measure", "enlargement_measure", "rectangles", "journe_sum", "ratio", "min_mu", "max_mu"});
  struct Out {
    Row row;
    CsvTable rects;
  };
  const auto outs = run_indexed<Out>(c.instances, c.jobs, [&](int i) -> Out {
    Rng rng = instance_rng(c, i);
    const auto u = random_open_set(rng, c.resolution, c.params.max_boxes);
    const auto v = enlargement(u, delta);
    const auto js = journe_sum(u, delta, eps);
    auto ucol = maximal_rectangles(u);
    for (const auto& e : js.table) {
      auto& a = ucol.attributes(e.rect);
      a.mu = e.mu;
      a.stratum = stratum_of(e.mu);
      a.tag = residue_tag(e.rect, *a.stratum, gamma);
    }
    const CellSet nu_target = strong_maximal(u).above(0.5);
    std::vector<EmbeddednessReport> table;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& e : js.table) {
      auto& rep = table.emplace_back(e);
      rep.nu = dilation_depth(e.rect, nu_target, DilationMode::first_axis_only);
      rep.has_nu = true;
      lo = std::min(lo, e.mu);
      hi = std::max(hi, e.mu);
    }
    CsvTable rects({"instance", "j1", "k1", "j2", "k2", "area", "mu", "nu", "stratum", "tag"});
    const auto per_rect = io::journe_table(table, &ucol);
    for (const auto& row : per_rect.rows()) {
      Row full{ll(i)};
      full.insert(full.end(), row.begin(), row.end());
      rects.add_row(std::move(full));
    }
    return {{ll(i), u.measure(), v.measure(), ll(static_cast<long long>(js.table.size())), js.sum, js.ratio, lo, hi},
            std::move(rects)};
  });
  CsvTable rects({"instance", "j1", "k1", "j2", "k2", "area", "mu", "nu", "stratum", "tag"});
  for (const auto& o : outs) {
    r.table.add_row(o.row);
    rects.append(o.rects);
  }
  r.files["journe-scan_rectangles.csv"] = rects.str();
  r.files["journe-scan_ratio_histogram.dat"] = plotdata(r.table, {"", "histogram", "ratio", "", 20});

  CsvTable rows({"squares", "side_cells", "gap_cells", "mu", "nu", "nu_over_mu"});
  std::vector<double> growth;
  double at8 = std::numeric_limits<double>::quiet_NaN();
  for (int k : c.params.row_counts) {
    const auto row = row_of_squares(k, c.params.row_density, c.params.row_resolution);
    const auto e = embeddedness(row.middle, enlargement(row.set, delta), delta, &row.set);
    rows.add_row({ll(k), ll(row.side_cells), ll(row.gap_cells), e.mu, e.nu, e.nu / e.mu});
    growth.push_back(e.nu / e.mu);
    if (k == 8) at8 = e.nu / e.mu;
  }
  r.files["journe-scan_row_of_squares.csv"] = rows.str();
  bool nondecreasing = true;
  for (std::size_t i = 1; i < growth.size(); ++i) nondecreasing = nondecreasing && growth[i] >= growth[i - 1];

  if (r.table.size()) {
    const double mx = column_max(r.table, "ratio");
    r.checks.push_back(at_most("max journe ratio", std::isfinite(mx) ? mx : INFINITY, 100.0));
  }
  if (!std::isnan(at8)) r.checks.push_back(at_least("row-of-squares nu/mu at K=8", at8, 2.0));
  r.checks.push_back(at_least("nu/mu nondecreasing in K", nondecreasing ? 1.0 : 0.0, 1.0));
  return r;
}

// ---------------------------------------------------------------------------
// decomposition
// ---------------------------------------------------------------------------

Report decomposition(const ExperimentConfig& c) {
  const double delta = c.params.delta;
  const double threshold = c.params.enlargement_threshold.value_or(delta);
  const std::size_t n = c.grid;
  Report r;
  r.command = c.command;
  r.table = CsvTable({"instance", "bmo_lower", "rect_bmo", "measure_U", "measure_V", "count_U", "count_V", "count_W",
                      "norm2_bU", "norm2_bV", "norm4_bV", "norm4sq_bU", "bracket_VU", "bracket_WU", "bracket_UU",
                      "bracket_UV_U", "bracket_all_U", "operator_norm", "delta_pow"});
  const auto rows = run_indexed<Row>(c.instances, c.jobs, [&](int i) -> Row {
    Rng rng = instance_rng(c, i);
    const auto sym = make_symbol(c.family, n, c.resolution, rng);
    const auto raw = analyze(sym.b, c.resolution);
    const auto est = product_bmo_lower(raw, {c.params.budget, true});
    if (est.value <= 0.0) fail(ErrorCode::domain_violation, "symbol has no coefficient mass");
    // Normalize so the lower bound equals 1 and U carries sum |c_R|^2 = |U|.
    const auto coeffs = raw.scaled(1.0 / est.value);
    const auto b = 1.0 / est.value * sym.b;
    const CellSet& u = est.witness;
    const auto v = enlargement(u, threshold);
    const CellCounter in_u(u), in_v(v);
    RectCollection cu(c.resolution), cv(c.resolution), cw(c.resolution);
    for (const auto& [rect, value] : coeffs.values()) {
      (void)value;
      if (in_u.covers(rect)) cu.insert(rect);
      else if (in_v.covers(rect)) cv.insert(rect);
      else cw.insert(rect);
    }
    const auto bu = project_collection(coeffs, cu, n);
    const auto bv = project_collection(coeffs, cv, n);
    const auto bw = project_collection(coeffs, cw, n);
    const auto nr = operator_norm(b, c.params.tol, c.params.max_iter, rng.next_u64());
    return {ll(i), est.value, rect_bmo(coeffs).value, u.measure(), v.measure(), ll(static_cast<long long>(cu.size())),
            ll(static_cast<long long>(cv.size())), ll(static_cast<long long>(cw.size())), norm2(bu), norm2(bv),
            lp_norm(bv, 4), std::pow(lp_norm(bu, 4), 2), norm2(bracket(bv, bu)), norm2(bracket(bw, bu)),
            norm2(bracket(bu, bu)), norm2(bracket(bu + bv, bu)), norm2(bracket(bu + bv + bw, bu)), nr.norm,
            std::pow(delta, 0.125)};
  });
  for (auto row : rows) r.table.add_row(std::move(row));
  r.extra["enlargement_threshold"] = threshold;
  return r;
}

// ---------------------------------------------------------------------------
// oracle-audit
// ---------------------------------------------------------------------------

Report oracle_audit(const ExperimentConfig& c) {
  const std::size_t n = c.grid;
  Report r;
  r.command = c.command;
  r.table = CsvTable({"instance", "power_norm", "svd_norm", "abs_diff", "hankel_power", "hankel_svd",
                      "commutator_conj_svd", "hankel_ratio", "hankel_residual"});
  const auto rows = run_indexed<Row>(c.instances, c.jobs, [&](int i) -> Row {
    Rng rng = instance_rng(c, i);
    const auto b = random_complex(rng, n);
    const double power = operator_norm(b, c.params.tol, c.params.max_iter, rng.next_u64()).norm;
    const double svd = dense::largest_singular_value(dense::commutator_matrix(b));
    const auto h = bandlimited_symbol(rng, n, true);
    const double hp = hankel_norm(h, c.params.tol, c.params.max_iter, rng.next_u64()).norm;
    const double hs = dense::largest_singular_value(dense::hankel_matrix(h));
    const double cs = dense::largest_singular_value(dense::commutator_matrix(conj(h)));
    return {ll(i), power, svd, std::abs(power - svd), hp, hs, cs, hs / cs, std::abs(hs - 0.25 * cs)};
  });
  for (auto row : rows) r.table.add_row(std::move(row));
  if (r.table.size()) {
    r.checks.push_back(at_most("max |power - svd|", column_max(r.table, "abs_diff"), 1e-6));
    r.checks.push_back(at_most("max |hankel - commutator/4|", column_max(r.table, "hankel_residual"), 1e-6));
    r.extra["hankel_ratio_min"] = column_min(r.table, "hankel_ratio");
    r.extra["hankel_ratio_max"] = column_max(r.table, "hankel_ratio");
  }
  return r;
}

// ---------------------------------------------------------------------------
// maximal-audit
// ---------------------------------------------------------------------------

Report maximal_audit(const ExperimentConfig& c) {
  Report r;
  r.command = c.command;
  r.table = CsvTable({"instance", "delta", "measure", "level_measure", "weak_ratio", "constant2_ratio",
                      "composed_measure", "composed_ratio"});
  const auto blocks = run_indexed<std::vector<Row>>(c.instances, c.jobs, [&](int i) -> std::vector<Row> {
    Rng rng = instance_rng(c, i);
    const auto u = random_open_set(rng, c.resolution, c.params.max_boxes);
    const double m = u.measure();
    std::vector<Row> out;
    for (double d : c.params.deltas) {
      const double level = maximal_1d(u, Axis::first).above(d).measure();
      const double composed = composed_level_set(u, Axis::first, Axis::second, 1.0 - d).measure();
      const double bound2 = std::pow(1.0 - d, -2.0) * m;
      out.push_back({ll(i), d, m, level, level / (m / d), level / (2.0 * m / d), composed, composed / bound2});
    }
    return out;
  });
  for (const auto& block : blocks)
    for (const auto& row : block) r.table.add_row(row);
  if (r.table.size()) {
    r.checks.push_back(at_most("max weak_ratio (constant 1)", column_max(r.table, "weak_ratio"), 1.0));
    r.checks.push_back(at_most("max composed_ratio", column_max(r.table, "composed_ratio"), 1.0));
    r.extra["max_constant2_ratio"] = column_max(r.table, "constant2_ratio");
  }
  return r;
}

// ---------------------------------------------------------------------------
// thinning-audit
// ---------------------------------------------------------------------------

Report thinning_audit_command(const ExperimentConfig& c) {
  const double delta = c.params.delta;
  Report r;
  r.command = c.command;
  r.table = CsvTable({"instance", "resolution", "measure", "subclasses", "counterexamples"});
  struct Out {
    Row row;
    Json failures;
  };
  const auto outs = run_indexed<Out>(c.instances, c.jobs, [&](int i) -> Out {
    Rng rng = instance_rng(c, i);
    const int res = c.resolution == 0 ? 0 : 1 + i % c.resolution;
    const auto u = random_open_set(rng, res, c.params.max_boxes);
    const auto audit = thinning_audit(u, delta, c.params.gamma);
    Json failures = Json::array();
    for (const auto& sub : audit.failing) {
      Json rects = Json::array();
      for (const auto& q : sub.rectangles())
        rects.push_back({q.first().scale(), q.first().position(), q.second().scale(), q.second().position()});
      failures.push_back({{"instance", i}, {"set", io::to_json(u)}, {"subclass", rects}});
    }
    return {{ll(i), ll(res), u.measure(), ll(audit.subclasses), ll(audit.counterexamples)}, std::move(failures)};
  });
  Json archive = Json::array();
  long long total = 0;
  for (const auto& o : outs) {
    r.table.add_row(o.row);
    for (const auto& f : o.failures) archive.push_back(f);
    total += std::get<long long>(o.row[4]);
  }
  r.files["thinning-audit_counterexamples.json"] = archive.dump(1) + "\n";
  r.checks.push_back(at_most("counterexamples", static_cast<double>(total), 0.0));
  return r;
}

// ---------------------------------------------------------------------------
// plotdata
// ---------------------------------------------------------------------------

double as_real(const CsvTable::Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<long long>(&v)) return static_cast<double>(*i);
  const auto& s = std::get<std::string>(v);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') fail(ErrorCode::invalid_argument, "non-numeric value '" + s + "'");
  return x;
}

Report plotdata_command(const ExperimentConfig& c) {
  Report r;
  r.command = c.command;
  const auto source = CsvTable::parse(io::read_text(c.plot.source));
  r.table = CsvTable({"source_rows"});
  r.table.add_row({ll(static_cast<long long>(source.size()))});
  r.files["plotdata_" + c.plot.kind + ".dat"] = plotdata(source, c.plot);
  return r;
}

}  // namespace

std::string plotdata(const io::CsvTable& t, const PlotSpec& spec) {
  const std::size_t x = t.column(spec.x);
  std::string out;
  if (spec.kind == "scatter") {
    const std::size_t y = t.column(spec.y);
    out = spec.x + " " + spec.y + "\n";
    for (const auto& row : t.rows()) out += io::format_real(as_real(row[x])) + " " + io::format_real(as_real(row[y])) + "\n";
    return out;
  }
  if (spec.kind != "histogram") fail(ErrorCode::invalid_argument, "unknown plot kind '" + spec.kind + "'");
  if (spec.bins < 1) fail(ErrorCode::invalid_argument, "histogram needs at least one bin");
  out = "bin_lo bin_hi count\n";
  std::vector<double> v;
  for (const auto& row : t.rows()) v.push_back(as_real(row[x]));
  if (v.empty()) return out;
  const double lo = *std::min_element(v.begin(), v.end()), hi = *std::max_element(v.begin(), v.end());
  const double width = hi > lo ? (hi - lo) / spec.bins : 1.0;
  std::vector<long long> counts(static_cast<std::size_t>(spec.bins));
  for (double s : v) {
    auto b = static_cast<std::size_t>((s - lo) / width);
    counts[std::min(b, counts.size() - 1)]++;
  }
  for (int b = 0; b < spec.bins; ++b)
    out += io::format_real(lo + b * width) + " " + io::format_real(lo + (b + 1) * width) + " " +
           std::to_string(counts[static_cast<std::size_t>(b)]) + "\n";
  return out;
}

Report run(const ExperimentConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  if (c.command == "identity-check") r = identity_check(c);
  else if (c.command == "wavelet-audit") r = wavelet_audit(c);
  else if (c.command == "bmo-scan") r = bmo_scan(c);
  else if (c.command == "norm-compare") r = norm_compare(c);
  else if (c.command == "journe-scan") r = journe_scan(c);
  else if (c.command == "decomposition") r = decomposition(c);
  else if (c.command == "oracle-audit") r = oracle_audit(c);
  else if (c.command == "maximal-audit") r = maximal_audit(c);
  else if (c.command == "thinning-audit") r = thinning_audit_command(c);
  else if (c.command == "plotdata") r = plotdata_command(c);
  else fail(ErrorCode::config, "unknown command '" + c.command + "'");
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Json summary(const Report& r, const ExperimentConfig& c) {
  Json metrics = Json::object();
  for (std::size_t col = 1; col < r.table.header().size(); ++col) {
    double lo = INFINITY, hi = -INFINITY, sum = 0.0;
    std::size_t count = 0;
    for (const auto& row : r.table.rows()) {
      double x;
      if (const auto* d = std::get_if<double>(&row[col])) x = *d;
      else if (const auto* i = std::get_if<long long>(&row[col])) x = static_cast<double>(*i);
      else continue;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      sum += x;
      ++count;
    }
    if (count) metrics[r.table.header()[col]] = {{"min", lo}, {"max", hi}, {"mean", sum / static_cast<double>(count)}};
  }
  Json checks = Json::array();
  for (const auto& k : r.checks)
    checks.push_back({{"name", k.name}, {"value", k.value}, {"relation", k.relation}, {"limit", k.limit}, {"passed", k.passed}});
  return Json{{"command", r.command},
              {"config_hash", config_hash(c)},
              {"code_version", code_version()},
              {"generator", Rng::kName},
              {"seed", c.seed},
              {"rows", r.table.size()},
              {"metrics", metrics},
              {"checks", checks},
              {"passed", r.passed()},
              {"extra", r.extra},
              {"runtime_seconds", r.runtime_seconds}};
}

std::vector<std::string> write_report(const Report& r, const ExperimentConfig& c) {
  std::vector<std::string> paths;
  auto put = [&](const std::string& name, const std::string& content) {
    const std::string path = c.out_dir + "/" + name;
    io::write_text(path, content);
    paths.push_back(path);
  };
  put(r.command + ".csv", r.table.str());
  put(r.command + "_summary.json", summary(r, c).dump(2) + "\n");
  for (const auto& [name, content] : r.files) put(name, content);
  return paths;
}

}  // namespace bicomm::experiments
