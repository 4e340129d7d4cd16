#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "expunge/tables.hpp"

namespace expunge {

enum class TableFormat { Text, Csv, Latex };

TableFormat parse_table_format(std::string_view text);

std::string render_vanishing(const VanishingTable& table, TableFormat format);

/// Renders T, or T_w when both mask and w are given. `order` permutes rows for display;
/// degree_row_order() reproduces the printed layout.
std::string render_tensor(const TensorTable& table, TableFormat format, const ErasureMask* mask = nullptr,
                          const TwistVector* w = nullptr, const std::vector<std::size_t>* order = nullptr);

/// A CSV grid read back: row labels plus cells, nullopt for erased ("·") cells.
struct ParsedTable {
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<std::pair<Int, Int>>>> cells;
};

ParsedTable parse_table_csv(std::string_view text);

}  // namespace expunge
