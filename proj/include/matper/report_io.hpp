#ifndef MATPER_REPORT_IO_HPP
#define MATPER_REPORT_IO_HPP

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "matper/classify.hpp"
#include "matper/growth.hpp"
#include "matper/int_matrix.hpp"
#include "matper/modorder.hpp"

namespace matper {

// Matrix text format: {"rows": [[int, ...], ...]}, entries as JSON numbers or
// decimal strings, parsed exactly at any size. Distinct ParseError messages
// for malformed JSON, ragged rows, non-square shape and non-integer entries.
IntMatrix parse_matrix_text(const std::string& text);
IntMatrix parse_matrix_file(const std::string& path);

// big integers serialize as decimal strings unless they fit 53-bit exactness
nlohmann::ordered_json json_int(const Int& v);
// reals print with 6 significant digits
double round6(double v);
std::string format_real6(double v);

nlohmann::ordered_json matrix_json(const IntMatrix& m);
nlohmann::ordered_json order_report(const OrderResult& r);
nlohmann::ordered_json classify_report(const ExceptionalityVerdict& v);
nlohmann::ordered_json entropy_report(const EntropyResult& e);

std::string scan_csv(const ScanResult& s, const std::string& matrix_name, const Int& n_min,
                     const Int& n_max);
std::string gcd_stream_csv(const GcdStream& s, const std::string& matrix_name,
                           unsigned long n_max, unsigned long tail);
std::string period_sequence_csv(const PeriodSequence& s, const std::string& matrix_name,
                                unsigned long r, unsigned long k_max);

}  // namespace matper

#endif
