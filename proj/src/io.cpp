#include "conjfix/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "conjfix/errors.hpp"

namespace conjfix {

namespace {

nlohmann::json parse_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw io_error("cannot open " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw io_error(file.string() + ": " + e.what());
  }
  return j;
}

void write_file(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file);
  if (!out) throw io_error("cannot open " + file.string() + " for writing");
  out << text;
  if (!out) throw io_error("failed writing " + file.string());
}

double number_entry(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw io_error(where + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw io_error(where + ": value is not finite");
  return v;
}

}  // namespace

CouplingMatrix load_coupling(const std::filesystem::path& file) {
  nlohmann::json j = parse_file(file);
  const std::string ctx = file.string();
  if (!j.is_object() || !j.contains("labels") || !j.contains("phi"))
    throw io_error(ctx + ": coupling file must be an object with \"labels\" and \"phi\"");
  if (!j["labels"].is_array()) throw io_error(ctx + ": \"labels\" must be an array");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j["labels"].size(); ++i) {
    if (!j["labels"][i].is_string())
      throw io_error(ctx + ": label " + std::to_string(i) + " is not a string");
    labels.push_back(j["labels"][i].get<std::string>());
  }
  if (!j["phi"].is_array()) throw io_error(ctx + ": \"phi\" must be an array of rows");
  const std::size_t n = j["phi"].size();
  if (labels.size() != n)
    throw io_error(ctx + ": " + std::to_string(labels.size()) + " labels but " +
                   std::to_string(n) + " rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = j["phi"][r];
    if (!row.is_array() || row.size() != n)
      throw io_error(ctx + ": row " + std::to_string(r) + " has " +
                     (row.is_array() ? std::to_string(row.size()) : std::string("no")) +
                     " entries, expected " + std::to_string(n));
    std::vector<double> vals;
    vals.reserve(n);
    for (std::size_t s = 0; s < n; ++s)
      vals.push_back(number_entry(row[s], ctx + ": phi entry (" + std::to_string(r) + ", " +
                                              std::to_string(s) + ")"));
    rows.push_back(std::move(vals));
  }
  try {
    return CouplingMatrix::from_rows(std::move(labels), rows);
  } catch (const contract_error& e) {
    throw io_error(ctx + ": " + e.what());
  }
}

void save_coupling(const std::filesystem::path& file, const CouplingMatrix& phi) {
  nlohmann::ordered_json j;
  j["labels"] = phi.labels();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < phi.size(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < phi.size(); ++s) row.push_back(phi.at(r, s));
    rows.push_back(std::move(row));
  }
  j["phi"] = std::move(rows);
  write_file(file, j.dump(2) + "\n");
}

ExtReal extreal_from_json(const nlohmann::json& j, const std::string& where) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return ExtReal::pos_inf();
    if (s == "-inf") return ExtReal::neg_inf();
    throw io_error(where + ": string must be \"inf\" or \"-inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw io_error(where + ": expected a number or \"inf\"/\"-inf\"");
  double v = j.get<double>();
  if (std::isnan(v)) throw io_error(where + ": NaN is not a valid value");
  return ExtReal(v);
}

nlohmann::ordered_json extreal_to_json(ExtReal v) {
  if (v.is_pos_inf()) return "inf";
  if (v.is_neg_inf()) return "-inf";
  return v.raw();
}

Valuation valuation_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("values"))
    throw io_error(where + ": valuation must be an object with \"values\"");
  if (!j["values"].is_array()) throw io_error(where + ": \"values\" must be an array");
  std::vector<ExtReal> vals;
  vals.reserve(j["values"].size());
  for (std::size_t i = 0; i < j["values"].size(); ++i)
    vals.push_back(extreal_from_json(j["values"][i], where + ": entry " + std::to_string(i)));
  return Valuation(std::move(vals));
}

nlohmann::ordered_json valuation_to_json(const Valuation& h) {
  nlohmann::ordered_json vals = nlohmann::ordered_json::array();
  for (ExtReal v : h) vals.push_back(extreal_to_json(v));
  nlohmann::ordered_json j;
  j["values"] = std::move(vals);
  return j;
}

Valuation load_valuation(const std::filesystem::path& file) {
  return valuation_from_json(parse_file(file), file.string());
}

void save_valuation(const std::filesystem::path& file, const Valuation& h) {
  write_file(file, valuation_to_json(h).dump(2) + "\n");
}

OperatorSample load_operator_sample(const std::filesystem::path& file) {
  nlohmann::json j = parse_file(file);
  const std::string ctx = file.string();
  if (!j.is_object() || !j.contains("d") || !j.contains("pairs"))
    throw io_error(ctx + ": operator file must be an object with \"d\" and \"pairs\"");
  if (!j["d"].is_number_integer()) throw io_error(ctx + ": \"d\" must be an integer");
  int d = j["d"].get<int>();
  if (!j["pairs"].is_array()) throw io_error(ctx + ": \"pairs\" must be an array");
  std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
  for (std::size_t i = 0; i < j["pairs"].size(); ++i) {
    const auto& p = j["pairs"][i];
    if (!p.is_array() || p.size() != 2)
      throw io_error(ctx + ": pair " + std::to_string(i) + " must be [x, xstar]");
    auto read_vec = [&](const nlohmann::json& v, const char* which) {
      if (!v.is_array())
        throw io_error(ctx + ": pair " + std::to_string(i) + " " + which +
                       " must be an array");
      std::vector<double> out;
      for (std::size_t k = 0; k < v.size(); ++k)
        out.push_back(number_entry(v[k], ctx + ": pair " + std::to_string(i) + " " + which +
                                             " entry " + std::to_string(k)));
      return out;
    };
    pairs.emplace_back(read_vec(p[0], "x"), read_vec(p[1], "xstar"));
  }
  try {
    return OperatorSample(d, std::move(pairs));
  } catch (const contract_error& e) {
    throw io_error(ctx + ": " + e.what());
  }
}

void save_operator_sample(const std::filesystem::path& file, const OperatorSample& T) {
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const auto& [x, xs] : T.pairs) pairs.push_back({x, xs});
  nlohmann::ordered_json j;
  j["d"] = T.d;
  j["pairs"] = std::move(pairs);
  write_file(file, j.dump(2) + "\n");
}

ProductGrid load_grid(const std::filesystem::path& file) {
  nlohmann::json j = parse_file(file);
  const std::string ctx = file.string();
  if (!j.is_object() || !j.contains("d") || !j.contains("x_axes") || !j.contains("xstar_axes"))
    throw io_error(ctx + ": grid file must be an object with \"d\", \"x_axes\", \"xstar_axes\"");
  if (!j["d"].is_number_integer()) throw io_error(ctx + ": \"d\" must be an integer");
  int d = j["d"].get<int>();
  auto read_axes = [&](const nlohmann::json& a, const char* which) {
    if (!a.is_array()) throw io_error(ctx + ": \"" + std::string(which) + "\" must be an array");
    std::vector<std::vector<double>> axes;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (!a[k].is_array())
        throw io_error(ctx + ": " + which + " axis " + std::to_string(k) + " must be an array");
      std::vector<double> axis;
      for (std::size_t i = 0; i < a[k].size(); ++i)
        axis.push_back(number_entry(a[k][i], ctx + ": " + which + " axis " + std::to_string(k) +
                                                 " entry " + std::to_string(i)));
      axes.push_back(std::move(axis));
    }
    return axes;
  };
  try {
    return ProductGrid(d, read_axes(j["x_axes"], "x_axes"), read_axes(j["xstar_axes"], "xstar_axes"));
  } catch (const contract_error& e) {
    throw io_error(ctx + ": " + e.what());
  }
}

void save_grid(const std::filesystem::path& file, const ProductGrid& grid) {
  nlohmann::ordered_json j;
  j["d"] = grid.d();
  j["x_axes"] = grid.x_axes();
  j["xstar_axes"] = grid.xstar_axes();
  write_file(file, j.dump(2) + "\n");
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string format_extreal(ExtReal v) { return format_double(v.raw()); }

std::string grid_function_tsv(const ProductGrid& grid, const GridFunction& h) {
  if (h.size() != grid.node_count())
    throw contract_error("grid_function_tsv: grid function size does not match node count");
  std::ostringstream out;
  for (int k = 0; k < grid.d(); ++k) out << (grid.d() == 1 ? "x" : "x" + std::to_string(k + 1)) << '\t';
  for (int k = 0; k < grid.d(); ++k)
    out << (grid.d() == 1 ? "xstar" : "xstar" + std::to_string(k + 1)) << '\t';
  out << "value\n";
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    for (double c : grid.x_of(i)) out << format_double(c) << '\t';
    for (double c : grid.xstar_of(i)) out << format_double(c) << '\t';
    out << format_extreal(h[i]) << '\n';
  }
  return out.str();
}

void write_grid_function_tsv(const std::filesystem::path& file, const ProductGrid& grid,
                             const GridFunction& h) {
  write_file(file, grid_function_tsv(grid, h));
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out << "sweep,index,t0,gap\n";
  for (const TraceRow& row : trace)
    out << row.sweep << ',' << row.index << ',' << format_double(row.t0) << ','
        << format_extreal(row.gap_before) << '\n';
  return out.str();
}

void write_trace_csv(const std::filesystem::path& file, const std::vector<TraceRow>& trace) {
  write_file(file, trace_csv(trace));
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    hash ^= p[i];
    hash *= 0x00000100000001b3ULL;
  }
  return hash;
}

std::string digest_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw io_error("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
  char out[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  out[16] = '\0';
  return std::string("fnv1a64:") + out;
}

}  // namespace conjfix
