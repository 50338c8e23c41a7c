#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zcli {

std::string fmt10(double x);     // 10 significant digits
std::string hex_double(double x);  // exact binary64, C99 hex-float

// RFC 4180 style: fields quoted when they contain a comma, quote or line break.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

}  // namespace zcli
