#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fdb {

/// Syntax error with a 1-based position in the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error("ParseError at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Byte cursor over a text buffer that tracks line and column. Columns count
/// code points, so multi-byte separators such as "·" advance by one.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool at_end() const noexcept { return pos_ >= text_.size(); }
    char peek() const noexcept { return at_end() ? '\0' : text_[pos_]; }
    std::size_t position() const noexcept { return pos_; }

    bool starts_with(std::string_view s) const noexcept { return text_.substr(pos_).substr(0, s.size()) == s; }

    void advance(std::size_t bytes = 1)
    {
        for (std::size_t i = 0; i < bytes && !at_end(); ++i) {
            const unsigned char c = static_cast<unsigned char>(text_[pos_++]);
            if (c == '\n') {
                ++line_;
                column_ = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++column_;
            }
        }
        // Continuation bytes belong to the code point just counted.
        while (!at_end() && (static_cast<unsigned char>(text_[pos_]) & 0xC0) == 0x80) {
            ++pos_;
        }
    }

    bool accept(std::string_view s)
    {
        if (!starts_with(s)) {
            return false;
        }
        advance(s.size());
        return true;
    }

    void expect(std::string_view s)
    {
        if (!accept(s)) {
            fail("expected '" + std::string(s) + "'");
        }
    }

    void skip_space()
    {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) {
            advance();
        }
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        std::string found = at_end() ? "end of input" : "'" + std::string(1, peek()) + "'";
        throw ParseError(what + ", found " + found, line_, column_);
    }

    [[noreturn]] void fail_here(const std::string& what) const { throw ParseError(what, line_, column_); }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

} // namespace fdb
