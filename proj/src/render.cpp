#include "expunge/render.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace expunge {

namespace {

constexpr std::string_view kErased = "\u00b7";

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

std::string math(Int v) { return "$" + std::to_string(v) + "$"; }

// Twist row above and below an erased table: md - c_{i+1} over b^i, c_i over a^i.
std::string latex_twist_row(const TwistVector& w, Int g, Int md) {
  std::string out = " & ";
  for (Int i = 1; i <= g; ++i) {
    out += " & " + (i == 1 ? std::string() : math(w.c(i)));
    out += " & " + (i == g ? std::string() : math(md - w.c(i + 1)));
  }
  return out + " \\\\\n";
}

}  // namespace

TableFormat parse_table_format(std::string_view text) {
  if (text == "text") return TableFormat::Text;
  if (text == "csv") return TableFormat::Csv;
  if (text == "latex") return TableFormat::Latex;
  throw Error(ErrorCode::InvalidArgument, "unknown table format '" + std::string(text) + "'");
}

std::string render_vanishing(const VanishingTable& table, TableFormat format) {
  std::ostringstream out;
  const Int g = table.g(), r = table.r();
  switch (format) {
    case TableFormat::Csv:
      out << "j";
      for (Int i = 1; i <= g; ++i) out << "," << i;
      out << "\n";
      for (Int j = 0; j <= r; ++j) {
        out << j;
        for (Int i = 1; i <= g; ++i) out << "," << table.a(j, i) << ":" << table.b(j, i);
        out << "\n";
      }
      break;
    case TableFormat::Latex: {
      out << "\\begin{tabular}{";
      for (Int i = 1; i <= g; ++i) out << (i == 1 ? "lr" : "|lr");
      out << "}\n";
      for (Int j = 0; j <= r; ++j) {
        for (Int i = 1; i <= g; ++i) out << (i == 1 ? "" : " & ") << math(table.a(j, i)) << " & " << math(table.b(j, i));
        out << " \\\\\n";
      }
      out << "\\end{tabular}\n";
      break;
    }
    case TableFormat::Text: {
      std::size_t width = 1;
      for (Int j = 0; j <= r; ++j)
        for (Int i = 1; i <= g; ++i)
          width = std::max({width, std::to_string(table.a(j, i)).size(), std::to_string(table.b(j, i)).size()});
      for (Int j = 0; j <= r; ++j) {
        out << pad(std::to_string(j), 3);
        for (Int i = 1; i <= g; ++i)
          out << " | " << pad(std::to_string(table.a(j, i)), width) << " " << pad(std::to_string(table.b(j, i)), width);
        out << "\n";
      }
      break;
    }
  }
  return out.str();
}

std::string render_tensor(const TensorTable& table, TableFormat format, const ErasureMask* mask, const TwistVector* w,
                          const std::vector<std::size_t>* order) {
  const Int g = table.g();
  const auto rows = order ? *order : identity_order(table.rows());
  if (rows.size() != table.rows()) throw Error(ErrorCode::InvalidArgument, "row order has the wrong length");
  if (mask && (mask->rows() != table.rows() || mask->g() != g))
    throw Error(ErrorCode::InvalidArgument, "mask does not match the table");
  if (w && w->genus() != g) throw Error(ErrorCode::InvalidArgument, "twist vector does not match the table");
  auto present = [&](std::size_t k, Int i) { return mask == nullptr || mask->present(k, i); };

  std::ostringstream out;
  switch (format) {
    case TableFormat::Csv:
      out << "row";
      for (Int i = 1; i <= g; ++i) out << "," << i;
      out << "\n";
      for (std::size_t k : rows) {
        out << csv_quote(table.row(k).to_string());
        for (Int i = 1; i <= g; ++i) {
          out << ",";
          if (present(k, i))
            out << table.a(k, i) << ":" << table.b(k, i);
          else
            out << kErased;
        }
        out << "\n";
      }
      break;
    case TableFormat::Latex: {
      out << "\\begin{tabular}{l";
      for (Int i = 1; i <= g; ++i) out << (i == 1 ? "lr" : "|lr");
      out << "}\n";
      if (w) out << latex_twist_row(*w, g, table.md()) << "\\hline\n";
      for (std::size_t k : rows) {
        out << "$" << table.row(k).to_string() << "$";
        for (Int i = 1; i <= g; ++i) {
          const std::string shade = mask && mask->present(k, i) ? "\\cellcolor[gray]{.8} " : "";
          out << " & " << shade << math(table.a(k, i)) << " & " << shade << math(table.b(k, i));
        }
        out << " \\\\\n";
      }
      if (w) out << "\\hline\n" << latex_twist_row(*w, g, table.md());
      out << "\\end{tabular}\n";
      break;
    }
    case TableFormat::Text: {
      std::size_t width = 1, label = 1;
      for (std::size_t k = 0; k < table.rows(); ++k) {
        label = std::max(label, table.row(k).to_string().size());
        for (Int i = 1; i <= g; ++i)
          width = std::max({width, std::to_string(table.a(k, i)).size(), std::to_string(table.b(k, i)).size()});
      }
      if (w) {
        out << std::string(label, ' ');
        for (Int i = 1; i <= g; ++i) {
          const std::string top = i == 1 ? "" : std::to_string(w->c(i));
          const std::string bottom = i == g ? "" : std::to_string(table.md() - w->c(i + 1));
          out << " | " << pad(top, width + 1) << " " << pad(bottom, width);
        }
        out << "\n";
      }
      for (std::size_t k : rows) {
        out << pad(table.row(k).to_string(), label);
        for (Int i = 1; i <= g; ++i) {
          const char mark = mask && mask->present(k, i) ? '*' : ' ';
          out << " | " << mark << pad(std::to_string(table.a(k, i)), width) << " "
              << pad(std::to_string(table.b(k, i)), width);
        }
        out << "\n";
      }
      break;
    }
  }
  return out.str();
}

ParsedTable parse_table_csv(std::string_view text) {
  auto fail = [](const std::string& why) -> void { throw Error(ErrorCode::ParseError, "table csv: " + why); };
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty()) fail("empty input");

  auto split = [&](std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        fields.push_back(cur);
        cur.clear();
      } else if (ch != '\r') {
        cur += ch;
      }
    }
    if (quoted) fail("unbalanced quote");
    fields.push_back(cur);
    return fields;
  };
  auto number = [&](std::string_view s) {
    Int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("bad integer '" + std::string(s) + "'");
    return v;
  };

  const std::size_t columns = split(lines[0]).size();
  ParsedTable out;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto fields = split(lines[l]);
    if (fields.size() != columns) fail("ragged row " + std::to_string(l));
    out.labels.push_back(fields[0]);
    std::vector<std::optional<std::pair<Int, Int>>> row;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      if (fields[f] == kErased) {
        row.emplace_back(std::nullopt);
        continue;
      }
      const auto colon = fields[f].find(':');
      if (colon == std::string::npos) fail("cell without ':'");
      const std::string_view cell(fields[f]);
      row.emplace_back(std::make_pair(number(cell.substr(0, colon)), number(cell.substr(colon + 1))));
    }
    out.cells.push_back(std::move(row));
  }
  return out;
}

}  // namespace expunge
