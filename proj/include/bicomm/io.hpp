#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bicomm/bmo.hpp"
#include "bicomm/commutator.hpp"
#include "bicomm/grid.hpp"
#include "bicomm/journe.hpp"
#include "bicomm/wavelets.hpp"
#include "json.hpp"

namespace bicomm::io {

using Json = nlohmann::json;

/// {"n": n, "rows": [...]}: row r lists cells (c1, r) for c1 = 0, 1, ... as
/// bits, most significant first, padded with zero bits to whole hex digits.
Json to_json(const CellSet& u);
CellSet cellset_from_json(const Json& j);

/// Array of {"j1","k1","j2","k2","re","im"} records in rectangle order.
Json to_json(const WaveletCoefficients& c);
/// `resolution` < 0 infers the finest scale present.
WaveletCoefficients coefficients_from_json(const Json& j, int resolution = -1);

Json to_json(const BmoEstimate& e);
BmoEstimate bmo_from_json(const Json& j);

/// Signals are stored as `<base>.bin` (little-endian float64 pairs re, im,
/// row-major) next to `<base>.json` holding {"dims": [N] or [N, N]}. A
/// trailing ".bin" on `base` is ignored.
void write_signal(const std::string& base, const GridSignal1D& f);
void write_signal(const std::string& base, const GridSignal2D& f);
GridSignal1D read_signal_1d(const std::string& base);
GridSignal2D read_signal_2d(const std::string& base);

/// In-memory CSV table with a fixed header. Reals are written with %.17g so
/// output is byte-stable for identical inputs.
class CsvTable {
 public:
  using Value = std::variant<long long, double, std::string>;

  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<Value>>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  void add_row(std::vector<Value> row);
  void append(const CsvTable& other);
  std::string str() const;

  /// Index of a column; throws for unknown names.
  std::size_t column(const std::string& name) const;

  static CsvTable parse(const std::string& text);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Value>> rows_;
};

std::string format_real(double v);

CsvTable trace_table(const std::vector<TraceRow>& trace);

/// Per-rectangle Journé table: j1,k1,j2,k2,area,mu,nu,stratum,tag.
CsvTable journe_table(const std::vector<EmbeddednessReport>& table, const RectCollection* attributes = nullptr);

std::string read_text(const std::string& path);
/// Creates parent directories as needed.
void write_text(const std::string& path, const std::string& content);

}  // namespace bicomm::io
