// csv.hpp — Deterministic CSV output (12 significant digits, '\n', no locale)

#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace floquet_zeno::csv {

// Shortest-form %.12g equivalent, independent of the global locale.
std::string format_number(double value);

class Writer {
public:
    Writer(std::ostream& out, std::initializer_list<std::string_view> header);
    Writer(std::ostream& out, const std::vector<std::string>& header);

    Writer& operator<<(double value);
    Writer& operator<<(int value);
    Writer& operator<<(std::string_view text);
    void end_row();

private:
    void separator();

    std::ostream& out_;
    bool row_started_{false};
};

}  // namespace floquet_zeno::csv
