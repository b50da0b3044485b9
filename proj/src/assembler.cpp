#include "pec/assembler.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <optional>
#include <vector>

#include <fmt/format.h>

namespace pec {

std::string_view to_string(AsmErrorKind kind) {
  switch (kind) {
    case AsmErrorKind::Syntax: return "syntax error";
    case AsmErrorKind::UnknownMnemonic: return "unknown mnemonic";
    case AsmErrorKind::UndefinedLabel: return "undefined label";
    case AsmErrorKind::DuplicateLabel: return "duplicate label";
    case AsmErrorKind::OperandOutOfRange: return "operand out of range";
    case AsmErrorKind::ProgramTooLarge: return "program too large";
    case AsmErrorKind::OverlappingCode: return "overlapping code";
  }
  return "error";
}

AsmError::AsmError(AsmErrorKind kind, int line, int column, const std::string& detail)
    : std::runtime_error(detail.empty()
                             ? fmt::format("line {}: {} (column {})", line, to_string(kind), column)
                             : fmt::format("line {}: {} {} (column {})", line, to_string(kind),
                                           detail, column)),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  int column = 0;
};

enum class StatementKind { Empty, Instruction, Org, Word };

struct Statement {
  int line = 0;
  StatementKind kind = StatementKind::Empty;
  Token head;
  Opcode opcode = Opcode::NOP;
  std::vector<Token> operands;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool looks_like_register(std::string_view s) {
  if (s.size() < 2 || (s[0] != 'R' && s[0] != 'r')) return false;
  for (char c : s.substr(1))
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

class Parser {
 public:
  Parser(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  int column() const { return static_cast<int>(pos_) + 1; }

  // A run of characters up to whitespace or a comma.
  Token word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != ',') ++pos_;
    return {text_.substr(start, pos_ - start), static_cast<int>(start) + 1};
  }

  // Consumes "ident:" if present.
  std::optional<Token> label() {
    skip_space();
    std::size_t p = pos_;
    if (p >= text_.size() || !is_ident_start(text_[p])) return std::nullopt;
    while (p < text_.size() && is_ident_char(text_[p])) ++p;
    std::size_t q = p;
    while (q < text_.size() && is_space(text_[q])) ++q;
    if (q >= text_.size() || text_[q] != ':') return std::nullopt;
    Token t{text_.substr(pos_, p - pos_), static_cast<int>(pos_) + 1};
    pos_ = q + 1;
    return t;
  }

  std::vector<Token> operand_list() {
    std::vector<Token> out;
    if (at_end()) return out;
    for (;;) {
      Token t = word();
      if (t.text.empty()) throw AsmError(AsmErrorKind::Syntax, line_, column(), "missing operand");
      out.push_back(t);
      if (at_end()) break;
      if (text_[pos_] != ',')
        throw AsmError(AsmErrorKind::Syntax, line_, column(), "expected ','");
      ++pos_;
    }
    return out;
  }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

std::optional<long> parse_number(std::string_view s) {
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  }
  if (s.empty()) return std::nullopt;
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec == std::errc::result_out_of_range) return std::numeric_limits<long>::max();
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

class Assembler {
 public:
  Assembly run(std::string_view source) {
    parse(source);
    layout();
    emit();
    return std::move(result_);
  }

 private:
  void parse(std::string_view source) {
    int line_no = 0;
    while (!source.empty() || line_no == 0) {
      ++line_no;
      const auto nl = source.find('\n');
      std::string_view line = source.substr(0, nl);
      source = nl == std::string_view::npos ? std::string_view{} : source.substr(nl + 1);
      if (const auto semi = line.find(';'); semi != std::string_view::npos)
        line = line.substr(0, semi);
      statements_.push_back(parse_line(line, line_no));
      if (nl == std::string_view::npos) break;
    }
  }

  Statement parse_line(std::string_view text, int line_no) {
    Parser p(text, line_no);
    Statement st;
    st.line = line_no;
    while (auto lbl = p.label()) {
      if (looks_like_register(lbl->text))
        throw AsmError(AsmErrorKind::Syntax, line_no, lbl->column,
                       fmt::format("register name '{}' used as label", lbl->text));
      pending_labels_.push_back({std::string(lbl->text), line_no, lbl->column});
    }
    if (p.at_end()) {
      labels_for_.push_back(std::move(pending_labels_));
      pending_labels_.clear();
      return st;
    }
    st.head = p.word();
    if (st.head.text == ".org" || st.head.text == ".ORG") {
      st.kind = StatementKind::Org;
    } else if (st.head.text == ".word" || st.head.text == ".WORD") {
      st.kind = StatementKind::Word;
    } else if (auto op = opcode_from_mnemonic(st.head.text)) {
      st.kind = StatementKind::Instruction;
      st.opcode = *op;
    } else {
      throw AsmError(AsmErrorKind::UnknownMnemonic, line_no, st.head.column,
                     fmt::format("'{}'", st.head.text));
    }
    st.operands = p.operand_list();
    labels_for_.push_back(std::move(pending_labels_));
    pending_labels_.clear();
    return st;
  }

  // Pass 1: assign addresses and collect labels.
  void layout() {
    int lc = 0;
    addresses_.resize(statements_.size());
    for (std::size_t i = 0; i < statements_.size(); ++i) {
      const Statement& st = statements_[i];
      if (st.kind == StatementKind::Org) {
        expect_count(st, 1);
        const Token& t = st.operands[0];
        const auto v = parse_number(t.text);
        if (!v) throw AsmError(AsmErrorKind::Syntax, st.line, t.column, ".org needs a number");
        if (*v < 0 || *v >= kRomWords)
          throw AsmError(AsmErrorKind::OperandOutOfRange, st.line, t.column,
                         fmt::format("origin {}", *v));
        lc = static_cast<int>(*v);
      }
      for (const auto& lbl : labels_for_[i]) {
        auto [it, inserted] = result_.symbols.emplace(lbl.name, lc);
        if (!inserted)
          throw AsmError(AsmErrorKind::DuplicateLabel, lbl.line, lbl.column,
                         fmt::format("'{}'", lbl.name));
      }
      addresses_[i] = lc;
      if (st.kind == StatementKind::Instruction || st.kind == StatementKind::Word) {
        if (lc >= kRomWords)
          throw AsmError(AsmErrorKind::ProgramTooLarge, st.line, st.head.column,
                         fmt::format("(more than {} words)", kRomWords));
        ++lc;
      }
    }
  }

  // Pass 2: encode.
  void emit() {
    std::array<bool, kRomWords> used{};
    for (std::size_t i = 0; i < statements_.size(); ++i) {
      const Statement& st = statements_[i];
      if (st.kind != StatementKind::Instruction && st.kind != StatementKind::Word) continue;
      const int addr = addresses_[i];
      if (used[addr])
        throw AsmError(AsmErrorKind::OverlappingCode, st.line, st.head.column,
                       fmt::format("at address {}", addr));
      used[addr] = true;
      if (st.kind == StatementKind::Word) {
        expect_count(st, 1);
        result_.image.words[addr] = static_cast<Word>(value(st, st.operands[0], 0xFFFF));
      } else {
        result_.image.words[addr] = encode(instruction(st));
      }
    }
  }

  Instruction instruction(const Statement& st) const {
    Instruction instr;
    instr.opcode = st.opcode;
    switch (format_of(st.opcode)) {
      case Format::RegReg:
        expect_count(st, 2);
        instr.rd = reg(st, st.operands[0]);
        instr.rs = reg(st, st.operands[1]);
        break;
      case Format::Reg:
        expect_count(st, 1);
        instr.rd = reg(st, st.operands[0]);
        break;
      case Format::RegImm:
        expect_count(st, 2);
        instr.rd = reg(st, st.operands[0]);
        instr.operand8 = static_cast<std::uint8_t>(value(st, st.operands[1], 0xFF));
        break;
      case Format::Imm:
        if (st.opcode == Opcode::NOP && st.operands.empty()) break;
        expect_count(st, 1);
        instr.operand8 = static_cast<std::uint8_t>(value(st, st.operands[0], 0xFF));
        break;
    }
    return instr;
  }

  static void expect_count(const Statement& st, std::size_t n) {
    if (st.operands.size() != n) {
      const int col = st.operands.size() > n ? st.operands[n].column : st.head.column;
      throw AsmError(AsmErrorKind::Syntax, st.line, col,
                     fmt::format("'{}' expects {} operand{}, got {}", st.head.text, n,
                                 n == 1 ? "" : "s", st.operands.size()));
    }
  }

  static std::uint8_t reg(const Statement& st, const Token& t) {
    if (!looks_like_register(t.text))
      throw AsmError(AsmErrorKind::Syntax, st.line, t.column,
                     fmt::format("expected register, got '{}'", t.text));
    const auto n = parse_number(t.text.substr(1));
    if (!n || *n >= kRegisterCount)
      throw AsmError(AsmErrorKind::OperandOutOfRange, st.line, t.column,
                     fmt::format("register '{}'", t.text));
    return static_cast<std::uint8_t>(*n);
  }

  long value(const Statement& st, const Token& t, long max) const {
    long v = 0;
    if (!t.text.empty() && std::isdigit(static_cast<unsigned char>(t.text[0]))) {
      const auto n = parse_number(t.text);
      if (!n)
        throw AsmError(AsmErrorKind::Syntax, st.line, t.column,
                       fmt::format("bad number '{}'", t.text));
      v = *n;
    } else if (!t.text.empty() && t.text[0] == '-') {
      throw AsmError(AsmErrorKind::OperandOutOfRange, st.line, t.column,
                     fmt::format("'{}' is negative", t.text));
    } else if (!t.text.empty() && is_ident_start(t.text[0])) {
      if (looks_like_register(t.text))
        throw AsmError(AsmErrorKind::Syntax, st.line, t.column,
                       fmt::format("expected value, got register '{}'", t.text));
      const auto it = result_.symbols.find(t.text);
      if (it == result_.symbols.end())
        throw AsmError(AsmErrorKind::UndefinedLabel, st.line, t.column,
                       fmt::format("'{}'", t.text));
      v = it->second;
    } else {
      throw AsmError(AsmErrorKind::Syntax, st.line, t.column,
                     fmt::format("unexpected '{}'", t.text));
    }
    if (v > max)
      throw AsmError(AsmErrorKind::OperandOutOfRange, st.line, t.column,
                     fmt::format("{} > {}", v, max));
    return v;
  }

  struct PendingLabel {
    std::string name;
    int line;
    int column;
  };

  std::vector<Statement> statements_;
  std::vector<std::vector<PendingLabel>> labels_for_;
  std::vector<PendingLabel> pending_labels_;
  std::vector<int> addresses_;
  Assembly result_;
};

}  // namespace

Assembly assemble(std::string_view source) { return Assembler{}.run(source); }

std::string disassemble(const RomImage& image) {
  std::string out;
  out.reserve(kRomWords * 12);
  for (Word w : image.words) {
    if (is_canonical(w))
      out += to_string(decode(w));
    else
      out += fmt::format(".word 0x{:04X}", w);
    out += '\n';
  }
  return out;
}

}  // namespace pec
