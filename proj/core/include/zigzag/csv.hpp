#ifndef ZIGZAG_CSV_HPP
#define ZIGZAG_CSV_HPP

#include <string>

namespace zigzag::csv {

/// Deterministic round-trip formatting ("%.17g"; infinities as "inf"/"-inf").
std::string num(double v);

/// Write text to path, creating parent directories; LF line endings are the
/// caller's responsibility (every writer in this project emits LF already).
void write_file(const std::string& path, const std::string& text);

} // namespace zigzag::csv

#endif
