#include "bicomm/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bicomm/error.hpp"

namespace bicomm::io {

static_assert(std::endian::native == std::endian::little, "signal files assume a little-endian host");

namespace {

const char* kHex = "0123456789abcdef";

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  fail(ErrorCode::io, std::string("invalid hex digit '") + ch + "'");
}

std::string strip_bin(const std::string& base) {
  if (base.size() > 4 && base.compare(base.size() - 4, 4, ".bin") == 0) return base.substr(0, base.size() - 4);
  return base;
}

void write_samples(const std::string& base, std::span<const Complex> samples, const Json& dims) {
  const auto stem = strip_bin(base);
  std::filesystem::path p(stem + ".bin");
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot open " + p.string());
  out.write(reinterpret_cast<const char*>(samples.data()), static_cast<std::streamsize>(samples.size() * sizeof(Complex)));
  if (!out) fail(ErrorCode::io, "short write to " + p.string());
  write_text(stem + ".json", Json{{"dims", dims}}.dump() + "\n");
}

std::vector<Complex> read_samples(const std::string& base, std::vector<std::size_t>& dims) {
  const auto stem = strip_bin(base);
  Json side;
  try {
    side = Json::parse(read_text(stem + ".json"));
    dims = side.at("dims").get<std::vector<std::size_t>>();
  } catch (const Json::exception& e) {
    fail(ErrorCode::io, "bad signal sidecar " + stem + ".json: " + e.what());
  }
  if (dims.empty() || dims.size() > 2) fail(ErrorCode::io, "signal sidecar must have 1 or 2 dims");
  std::size_t count = 1;
  for (auto d : dims) count *= d;
  std::ifstream in(stem + ".bin", std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + stem + ".bin");
  std::vector<Complex> v(count);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(count * sizeof(Complex)));
  if (in.gcount() != static_cast<std::streamsize>(count * sizeof(Complex)))
    fail(ErrorCode::io, stem + ".bin is shorter than its sidecar says");
  if (in.peek() != std::char_traits<char>::eof()) fail(ErrorCode::io, stem + ".bin is longer than its sidecar says");
  return v;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Json to_json(const CellSet& u) {
  const int side = u.side();
  const int digits = (side + 3) / 4;
  Json rows = Json::array();
  for (int r = 0; r < side; ++r) {
    std::string row(static_cast<std::size_t>(digits), '0');
    for (int d = 0; d < digits; ++d) {
      int v = 0;
      for (int b = 0; b < 4; ++b) {
        const int c1 = 4 * d + b;
        v = (v << 1) | (c1 < side && u.contains(c1, r) ? 1 : 0);
      }
      row[static_cast<std::size_t>(d)] = kHex[v];
    }
    rows.push_back(row);
  }
  return Json{{"n", u.resolution()}, {"rows", rows}};
}

CellSet cellset_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (n < 0 || n > 12) fail(ErrorCode::io, "cell set resolution out of range");
    const int side = 1 << n, digits = (side + 3) / 4;
    const auto& rows = j.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != side) fail(ErrorCode::io, "cell set needs 2^n rows");
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(side) * side);
    for (int r = 0; r < side; ++r) {
      const auto s = rows[static_cast<std::size_t>(r)].get<std::string>();
      if (static_cast<int>(s.size()) != digits) fail(ErrorCode::io, "cell set row has the wrong length");
      for (int d = 0; d < digits; ++d) {
        const int v = hex_value(s[static_cast<std::size_t>(d)]);
        for (int b = 0; b < 4; ++b) {
          const int c1 = 4 * d + b;
          const bool bit = (v >> (3 - b)) & 1;
          if (c1 >= side) {
            if (bit) fail(ErrorCode::io, "cell set padding bits must be zero");
            continue;
          }
          mask[static_cast<std::size_t>(r) * side + c1] = bit;
        }
      }
    }
    return CellSet(n, std::move(mask));
  } catch (const Json::exception& e) {
    fail(ErrorCode::io, std::string("bad cell set JSON: ") + e.what());
  }
}

Json to_json(const WaveletCoefficients& c) {
  Json out = Json::array();
  for (const auto& [r, v] : c.values())
    out.push_back({{"j1", r.first().scale()},
                   {"k1", r.first().position()},
                   {"j2", r.second().scale()},
                   {"k2", r.second().position()},
                   {"re", v.real()},
                   {"im", v.imag()}});
  return out;
}

WaveletCoefficients coefficients_from_json(const Json& j, int resolution) {
  try {
    if (!j.is_array()) fail(ErrorCode::io, "coefficients must be a JSON array");
    WaveletCoefficients::Map values;
    int finest = 0;
    for (const auto& rec : j) {
      const DyadicRectangle r(rec.at("j1").get<int>(), rec.at("k1").get<std::int64_t>(), rec.at("j2").get<int>(),
                              rec.at("k2").get<std::int64_t>());
      finest = std::max({finest, r.first().scale(), r.second().scale()});
      values[r] = Complex(rec.at("re").get<double>(), rec.at("im").get<double>());
    }
    return WaveletCoefficients(resolution < 0 ? finest : resolution, std::move(values));
  } catch (const Json::exception& e) {
    fail(ErrorCode::io, std::string("bad coefficient JSON: ") + e.what());
  }
}

Json to_json(const BmoEstimate& e) {
  return Json{{"value", e.value}, {"witness", to_json(e.witness)}, {"exact", e.exact}};
}

BmoEstimate bmo_from_json(const Json& j) {
  try {
    return BmoEstimate{j.at("value").get<double>(), cellset_from_json(j.at("witness")), j.at("exact").get<bool>()};
  } catch (const Json::exception& e) {
    fail(ErrorCode::io, std::string("bad BMO estimate JSON: ") + e.what());
  }
}

void write_signal(const std::string& base, const GridSignal1D& f) {
  write_samples(base, f.samples(), Json::array({f.size()}));
}

void write_signal(const std::string& base, const GridSignal2D& f) {
  write_samples(base, f.samples(), Json::array({f.size(), f.size()}));
}

GridSignal1D read_signal_1d(const std::string& base) {
  std::vector<std::size_t> dims;
  auto v = read_samples(base, dims);
  if (dims.size() != 1) fail(ErrorCode::io, "expected a one-dimensional signal");
  return GridSignal1D(std::move(v));
}

GridSignal2D read_signal_2d(const std::string& base) {
  std::vector<std::size_t> dims;
  auto v = read_samples(base, dims);
  if (dims.size() != 2 || dims[0] != dims[1]) fail(ErrorCode::io, "expected a square two-dimensional signal");
  return GridSignal2D(dims[0], std::move(v));
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::add_row(std::vector<Value> row) {
  if (row.size() != header_.size()) fail(ErrorCode::invalid_argument, "CSV row width does not match the header");
  rows_.push_back(std::move(row));
}

void CsvTable::append(const CsvTable& other) {
  if (other.header_ != header_) fail(ErrorCode::invalid_argument, "CSV headers differ");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header_.size(); ++i)
    if (header_[i] == name) return i;
  fail(ErrorCode::invalid_argument, "unknown metric '" + name + "'");
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + csv_escape(header_[i]);
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) out += format_real(v);
            else if constexpr (std::is_same_v<T, long long>) out += std::to_string(v);
            else out += csv_escape(v);
          },
          row[i]);
    }
    out += '\n';
  }
  return out;
}

CsvTable CsvTable::parse(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') field += '"', ++i;
      else if (ch == '"') quoted = false;
      else field += ch;
    } else if (ch == '"') {
      quoted = true;
      any = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (ch == '\n') {
      fields.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(fields));
      fields.clear();
      any = false;
    } else if (ch != '\r') {
      field += ch;
      any = true;
    }
  }
  if (any) {
    fields.push_back(std::move(field));
    records.push_back(std::move(fields));
  }
  if (records.empty()) fail(ErrorCode::io, "CSV has no header row");
  CsvTable t(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    std::vector<Value> row;
    for (auto& f : records[r]) row.emplace_back(std::move(f));
    if (row.size() != t.header_.size()) fail(ErrorCode::io, "CSV row " + std::to_string(r) + " has the wrong width");
    t.rows_.push_back(std::move(row));
  }
  return t;
}

CsvTable trace_table(const std::vector<TraceRow>& trace) {
  CsvTable t({"iter", "rayleigh", "gap"});
  for (const auto& row : trace) t.add_row({static_cast<long long>(row.iter), row.rayleigh, row.gap});
  return t;
}

CsvTable journe_table(const std::vector<EmbeddednessReport>& table, const RectCollection* attributes) {
  CsvTable t({"j1", "k1", "j2", "k2", "area", "mu", "nu", "stratum", "tag"});
  for (const auto& e : table) {
    const auto& r = e.rect;
    long long stratum = stratum_of(e.mu);
    std::string tag;
    if (attributes && attributes->contains(r)) {
      const auto& a = attributes->attributes(r);
      if (a.stratum) stratum = *a.stratum;
      tag = a.tag;
    }
    t.add_row({static_cast<long long>(r.first().scale()), static_cast<long long>(r.first().position()),
               static_cast<long long>(r.second().scale()), static_cast<long long>(r.second().position()), r.area(),
               e.mu, e.has_nu ? e.nu : std::nan(""), stratum, tag});
  }
  return t;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot open " + path + " for writing");
  out << content;
  if (!out) fail(ErrorCode::io, "short write to " + path);
}

}  // namespace bicomm::io
