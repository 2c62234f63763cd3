#ifndef PWAMIN_INSTANCE_IO_HPP
#define PWAMIN_INSTANCE_IO_HPP

#include <optional>
#include <string>

#include "pwamin/pwa.hpp"
#include "pwamin/summax.hpp"

namespace pwamin {

/// A parsed .pwa.json document. Instances are always stored exactly;
/// float-mode runs convert on entry.
struct Instance {
    enum class Kind { Pwa, SumMax };
    Kind kind = Kind::Pwa;
    std::optional<PwaFunction<Rational>> pwa;
    std::optional<SumMaxFunction<Rational>> summax;
    std::optional<Point<Rational>> x0;

    std::size_t var_count() const { return kind == Kind::Pwa ? pwa->var_count() : summax->var_count(); }
};

/// Parses an instance document. `origin` is used in error messages.
/// Throws ParseError with 1-based line/column for malformed JSON and
/// with a field path for semantic problems (bad rationals, dimension
/// inconsistencies, unknown keys).
Instance parse_instance(const std::string& text, const std::string& origin);

Instance load_instance(const std::string& path);

/// Canonical serialization: sorted keys, two-space indent, lowest-terms
/// rationals (integers as JSON numbers when they fit, otherwise "p/q"
/// strings), newline at EOF. Loading and saving any document reproduces
/// this form byte for byte.
std::string canonical_json(const Instance& inst);

void save_instance(const Instance& inst, const std::string& path);

} // namespace pwamin

#endif
