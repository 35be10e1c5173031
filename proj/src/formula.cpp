#include "taco/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "taco/errors.hpp"

namespace taco {
namespace {

struct CellToken {
  Cell cell;
  bool col_fixed = false;
  bool row_fixed = false;
};

bool is_word_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '$';
}

char upper(char ch) { return static_cast<char>(std::toupper(static_cast<unsigned char>(ch))); }

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](char c) { return upper(c); });
  return out;
}

// Matches `$?[A-Za-z]{1,3}$?[0-9]+`. Returns nullopt for anything else so the
// caller can decide whether the word is a name or a malformed reference.
std::optional<CellToken> match_cell(std::string_view word, std::size_t offset) {
  std::size_t pos = 0;
  CellToken tok;
  if (pos < word.size() && word[pos] == '$') {
    tok.col_fixed = true;
    ++pos;
  }
  std::size_t letters_begin = pos;
  while (pos < word.size() && std::isalpha(static_cast<unsigned char>(word[pos]))) ++pos;
  std::size_t letters = pos - letters_begin;
  if (letters == 0 || letters > 3) return std::nullopt;
  if (pos < word.size() && word[pos] == '$') {
    tok.row_fixed = true;
    ++pos;
  }
  std::size_t digits_begin = pos;
  while (pos < word.size() && std::isdigit(static_cast<unsigned char>(word[pos]))) ++pos;
  if (pos == digits_begin || pos != word.size()) return std::nullopt;
  if (word[digits_begin] == '0') throw ParseError("row numbers cannot start with 0", offset);
  try {
    tok.cell = parse_cell(upper(word.substr(letters_begin, letters)) +
                          std::string(word.substr(digits_begin)));
  } catch (const ParseError&) {
    throw ParseError("malformed reference '" + std::string(word) + "'", offset);
  }
  return tok;
}

bool is_error_literal(std::string_view text, std::size_t pos, std::size_t& len) {
  static constexpr std::array<std::string_view, 7> kErrors = {
      "#NULL!", "#DIV/0!", "#VALUE!", "#REF!", "#NAME?", "#NUM!", "#N/A"};
  for (auto lit : kErrors) {
    if (text.substr(pos, lit.size()) == lit) {
      len = lit.size();
      return true;
    }
  }
  return false;
}

class RefScanner {
 public:
  RefScanner(std::string_view text, Cell at) : text_(text), at_(at) {}

  std::vector<Dependency> run() {
    if (text_.empty() || text_[0] != '=') throw ParseError("formula must start with '='", 0);
    std::size_t pos = 1;
    while (pos < text_.size()) pos = step(pos);
    if (depth_ != 0) throw ParseError("unbalanced parentheses", text_.size());
    return std::move(out_);
  }

 private:
  std::size_t step(std::size_t pos) {
    char ch = text_[pos];
    if (ch == '"') return skip_string(pos);
    if (ch == '(') {
      ++depth_;
      return pos + 1;
    }
    if (ch == ')') {
      if (--depth_ < 0) throw ParseError("unbalanced parentheses", pos);
      return pos + 1;
    }
    if (ch == '!' || ch == '\'') throw ParseError("cross-sheet references are not supported", pos);
    if (ch == '[' || ch == ']') throw ParseError("structured references are not supported", pos);
    if (ch == '#') {
      std::size_t len = 0;
      if (is_error_literal(text_, pos, len)) return pos + len;
      throw ParseError("unknown error literal", pos);
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) ||
        (ch == '.' && pos + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos + 1]))))
      return skip_number(pos);
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '$' || ch == '_') return word(pos);
    return pos + 1;  // operators, separators, whitespace, array braces
  }

  std::size_t skip_string(std::size_t pos) {
    std::size_t k = pos + 1;
    while (k < text_.size()) {
      if (text_[k] == '"') {
        if (k + 1 < text_.size() && text_[k + 1] == '"') {
          k += 2;
          continue;
        }
        return k + 1;
      }
      ++k;
    }
    throw ParseError("unterminated string literal", pos);
  }

  std::size_t skip_number(std::size_t pos) {
    std::size_t k = pos;
    while (k < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[k])) || text_[k] == '.')) ++k;
    if (k < text_.size() && (text_[k] == 'E' || text_[k] == 'e')) {
      std::size_t e = k + 1;
      if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
      if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
        k = e;
        while (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
      }
    }
    if (k < text_.size() && text_[k] == ':') throw ParseError("row ranges are not supported", pos);
    if (k < text_.size() && std::isalpha(static_cast<unsigned char>(text_[k])))
      throw ParseError("malformed number", pos);
    return k;
  }

  std::size_t next_non_space(std::size_t k) const {
    while (k < text_.size() && std::isspace(static_cast<unsigned char>(text_[k]))) ++k;
    return k;
  }

  std::size_t word(std::size_t pos) {
    std::size_t end = pos;
    while (end < text_.size() && is_word_char(text_[end])) ++end;
    std::string_view w = text_.substr(pos, end - pos);
    std::size_t after = next_non_space(end);

    if (end < text_.size() && text_[end] == '!')
      throw ParseError("cross-sheet references are not supported", end);
    if (after < text_.size() && text_[after] == '(' && w.find('$') == std::string_view::npos) {
      if (upper(w) == "INDIRECT") throw ParseError("INDIRECT references are not supported", pos);
      return end;  // function name
    }

    auto first = match_cell(w, pos);
    if (!first) {
      std::string u = upper(w);
      if (u == "TRUE" || u == "FALSE") return end;
      throw ParseError("unsupported name or malformed reference '" + std::string(w) + "'", pos);
    }

    CellToken second = *first;
    if (end < text_.size() && text_[end] == ':') {
      std::size_t begin2 = end + 1;
      std::size_t end2 = begin2;
      while (end2 < text_.size() && is_word_char(text_[end2])) ++end2;
      auto tok = match_cell(text_.substr(begin2, end2 - begin2), begin2);
      if (!tok) throw ParseError("malformed range reference", begin2);
      second = *tok;
      end = end2;
    }
    add(*first, second);
    return end;
  }

  void add(const CellToken& a, const CellToken& b) {
    // Normalise so head is top-left; each `$` marker follows its coordinate.
    const CellToken& top = a.cell.row <= b.cell.row ? a : b;
    const CellToken& bottom = &top == &a ? b : a;
    const CellToken& left = a.cell.col == b.cell.col ? top : (a.cell.col < b.cell.col ? a : b);
    const CellToken& right = &left == &a ? b : a;
    Dependency d;
    d.prec = Range{{left.cell.col, top.cell.row}, {right.cell.col, bottom.cell.row}};
    d.dep = at_;
    d.hints = {left.col_fixed, top.row_fixed, right.col_fixed, bottom.row_fixed};
    bool seen = std::any_of(out_.begin(), out_.end(), [&](const Dependency& e) { return e.prec == d.prec; });
    if (!seen) out_.push_back(d);
  }

  std::string_view text_;
  Cell at_;
  int depth_ = 0;
  std::vector<Dependency> out_;
};

std::string format_cell(Cell c, bool col_fixed, bool row_fixed) {
  std::string out;
  if (col_fixed) out.push_back('$');
  out += column_label(c.col);
  if (row_fixed) out.push_back('$');
  out += std::to_string(c.row);
  return out;
}

}  // namespace

std::vector<Dependency> extract_refs(std::string_view formula, Cell at) {
  return RefScanner(formula, at).run();
}

std::string format_reference(const Range& r, const FixednessHints& h) {
  std::string head = format_cell(r.head, h.head_col, h.head_row);
  if (r.is_cell() && h.head_col == h.tail_col && h.head_row == h.tail_row) return head;
  return head + ":" + format_cell(r.tail, h.tail_col, h.tail_row);
}

}  // namespace taco
