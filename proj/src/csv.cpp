// csv.cpp — CSV formatting

#include "floquet_zeno/csv.hpp"

#include <array>
#include <charconv>
#include <vector>

namespace floquet_zeno::csv {

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 12);
    return {buf.data(), res.ptr};
}

Writer::Writer(std::ostream& out, std::initializer_list<std::string_view> header) : out_(out) {
    for (auto h : header) *this << h;
    end_row();
}

Writer::Writer(std::ostream& out, const std::vector<std::string>& header) : out_(out) {
    for (const auto& h : header) *this << std::string_view(h);
    end_row();
}

void Writer::separator() {
    if (row_started_) out_ << ',';
    row_started_ = true;
}

Writer& Writer::operator<<(double value) {
    separator();
    out_ << format_number(value);
    return *this;
}

Writer& Writer::operator<<(int value) {
    separator();
    out_ << value;
    return *this;
}

Writer& Writer::operator<<(std::string_view text) {
    separator();
    // Quote only when needed (error messages may carry commas).
    if (text.find_first_of(",\"\n") == std::string_view::npos) {
        out_ << text;
    } else {
        out_ << '"';
        for (char c : text) {
            if (c == '"') out_ << '"';
            out_ << (c == '\n' ? ' ' : c);
        }
        out_ << '"';
    }
    return *this;
}

void Writer::end_row() {
    out_ << '\n';
    row_started_ = false;
}

}  // namespace floquet_zeno::csv
