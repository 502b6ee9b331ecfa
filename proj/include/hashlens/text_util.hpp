#pragma once

// Shared text and file plumbing: UTF-8 iteration, Unicode casefolding,
// RFC-4180 CSV records, word-list files and the error types used across
// the library.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace hashlens {

/// Unrecoverable file-system problem (missing input, unwritable output).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that is readable but cannot be used as a whole.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-fatal problem with one record of an input file.
struct Diagnostic {
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::string message;
};

std::string format_diagnostic(const std::filesystem::path& file, const Diagnostic& d);

// --- Unicode -----------------------------------------------------------

/// Decodes one code point starting at `pos` and advances `pos`.
/// Malformed sequences yield U+FFFD and consume one byte.
char32_t next_code_point(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

std::size_t code_point_count(std::string_view s);

/// Full Unicode case folding (locale independent).
std::string casefold(std::string_view s);

bool is_alpha(char32_t cp);
bool is_word_char(char32_t cp);  // letter, digit or '_'
bool is_space(char32_t cp);
bool is_upper(char32_t cp);
bool is_digit(char32_t cp);

// --- Files -------------------------------------------------------------

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// One word per line, casefolded; blank lines and lines starting with '#'
/// are ignored.
std::unordered_set<std::string> load_word_list(const std::filesystem::path& path);

// --- CSV ---------------------------------------------------------------

struct CsvRecord {
  std::size_t line = 0;  // line on which the record starts
  std::vector<std::string> fields;
};

/// Parses RFC-4180 text: quoted fields may contain commas, doubled quotes
/// and line breaks. CRLF and LF line endings are both accepted.
/// Throws DataError on an unterminated quoted field.
std::vector<CsvRecord> parse_csv(std::string_view text);

std::string csv_escape(std::string_view field);

/// Escapes each cell and joins them into one CSV line terminated by '\n'.
std::string csv_line(const std::vector<std::string>& cells);

std::vector<std::string> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

}  // namespace hashlens
