#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "conjfix/coupling.hpp"
#include "conjfix/fitzpatrick.hpp"
#include "conjfix/fixpoint.hpp"
#include "conjfix/valuation.hpp"

namespace conjfix {

/// File formats
/// ------------
/// coupling (JSON):   {"labels": ["a","b"], "phi": [[0.0,-3.0],[0.0,-3.0]]}
/// valuation (JSON):  {"values": [1.0, "-inf", "inf"]}  — infinities are the
///                    exact strings "inf" / "-inf", everything else numbers
/// operator  (JSON):  {"d": 1, "pairs": [[[0.0],[0.0]], [[1.0],[1.0]]]}
/// grid      (JSON):  {"d": 1, "x_axes": [[...]], "xstar_axes": [[...]]}
///                    with each axis strictly increasing
/// grid function (TSV): one node per line, "x... \t xstar... \t value",
///                    doubles printed with shortest round-trip precision
/// solver trace (CSV): header "sweep,index,t0,gap" then one row per update
///
/// Loaders throw io_error with a message naming the offending row or entry.

CouplingMatrix load_coupling(const std::filesystem::path& file);
void save_coupling(const std::filesystem::path& file, const CouplingMatrix& phi);

Valuation load_valuation(const std::filesystem::path& file);
void save_valuation(const std::filesystem::path& file, const Valuation& h);

OperatorSample load_operator_sample(const std::filesystem::path& file);
void save_operator_sample(const std::filesystem::path& file, const OperatorSample& T);

ProductGrid load_grid(const std::filesystem::path& file);
void save_grid(const std::filesystem::path& file, const ProductGrid& grid);

/// JSON encodings shared by files and reports: finite values as numbers,
/// infinities as "inf"/"-inf" strings.
nlohmann::ordered_json extreal_to_json(ExtReal v);
ExtReal extreal_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::ordered_json valuation_to_json(const Valuation& h);
Valuation valuation_from_json(const nlohmann::json& j, const std::string& where);

/// Shortest round-trip decimal form of a double ("inf"/"-inf" for the
/// infinities) — what the TSV/CSV writers emit.
std::string format_double(double v);
std::string format_extreal(ExtReal v);

/// TSV of a grid function (see format comment above).
void write_grid_function_tsv(const std::filesystem::path& file, const ProductGrid& grid,
                             const GridFunction& h);
std::string grid_function_tsv(const ProductGrid& grid, const GridFunction& h);

/// CSV of a solver trace.
void write_trace_csv(const std::filesystem::path& file, const std::vector<TraceRow>& trace);
std::string trace_csv(const std::vector<TraceRow>& trace);

/// FNV-1a 64-bit digest of a file's bytes, as "fnv1a64:<16 hex digits>".
/// Used for the input digests in run reports.
std::string digest_file(const std::filesystem::path& file);
std::uint64_t fnv1a64(const void* data, std::size_t len);

}  // namespace conjfix
