#include "taco/sheet_dump.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "taco/errors.hpp"

namespace taco {

SheetDump parse_dump(std::string_view text) {
  SheetDump out;
  std::unordered_map<Cell, std::size_t> first_line;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) throw DumpError(line_no, "expected address<TAB>content");
    Cell cell;
    try {
      cell = parse_cell(line.substr(0, tab));
    } catch (const Error& err) {
      throw DumpError(line_no, "bad address '" + std::string(line.substr(0, tab)) + "'");
    }
    auto [it, fresh] = first_line.emplace(cell, line_no);
    if (!fresh)
      throw DumpError(line_no, "duplicate address " + to_a1(cell) + " (first on line " +
                                   std::to_string(it->second) + ")");
    out.push_back({cell, std::string(line.substr(tab + 1))});
  }
  return out;
}

SheetDump read_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dump(buf.str());
}

std::string format_dump(const SheetDump& dump) {
  std::string out;
  for (const CellRecord& rec : dump) {
    if (rec.content.find('\n') != std::string::npos)
      throw Error("content of " + to_a1(rec.cell) + " contains a line break");
    out += to_a1(rec.cell);
    out += '\t';
    out += rec.content;
    out += '\n';
  }
  return out;
}

void write_dump(const std::filesystem::path& path, const SheetDump& dump) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << format_dump(dump);
}

void sort_column_major(SheetDump& dump) {
  std::stable_sort(dump.begin(), dump.end(),
                   [](const CellRecord& a, const CellRecord& b) { return a.cell < b.cell; });
}

std::vector<Dependency> sheet_dependencies(SheetDump dump) {
  sort_column_major(dump);
  std::vector<Dependency> out;
  for (const CellRecord& rec : dump) {
    if (!rec.is_formula()) continue;
    try {
      auto refs = extract_refs(rec.content, rec.cell);
      out.insert(out.end(), refs.begin(), refs.end());
    } catch (const ParseError& err) {
      throw Error(to_a1(rec.cell) + ": " + err.what());
    }
  }
  return out;
}

}  // namespace taco
