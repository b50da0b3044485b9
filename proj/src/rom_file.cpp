#include <cctype>

#include <fmt/format.h>

#include "pec/assembler.hpp"

namespace pec {

RomFormatError::RomFormatError(int line, const std::string& detail)
    : std::runtime_error(line > 0 ? fmt::format("line {}: {}", line, detail) : detail),
      line_(line) {}

std::string format_rom_image(const RomImage& image) {
  std::string out;
  out.reserve(kRomWords * 5);
  for (Word w : image.words) out += fmt::format("{:04X}\n", w);
  return out;
}

RomImage parse_rom_image(std::string_view text) {
  RomImage image;
  int count = 0;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.size() != 4)
      throw RomFormatError(line_no, fmt::format("expected 4 hex digits, got '{}'", line));
    unsigned value = 0;
    for (char c : line) {
      if (!std::isxdigit(static_cast<unsigned char>(c)))
        throw RomFormatError(line_no, fmt::format("bad hex digit '{}'", c));
      value = value * 16 + static_cast<unsigned>(std::isdigit(static_cast<unsigned char>(c))
                                                     ? c - '0'
                                                     : std::toupper(c) - 'A' + 10);
    }
    if (count >= kRomWords)
      throw RomFormatError(line_no, fmt::format("expected {} words, got more", kRomWords));
    image.words[count++] = static_cast<Word>(value);
  }
  if (count != kRomWords)
    throw RomFormatError(0, fmt::format("expected {} words, got {}", kRomWords, count));
  return image;
}

}  // namespace pec
