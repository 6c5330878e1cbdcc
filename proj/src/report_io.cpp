#include "matper/report_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "matper/errors.hpp"

namespace matper {

using ordered_json = nlohmann::ordered_json;

namespace {

bool is_decimal_integer(const std::string& s) {
    if (s.empty()) return false;
    size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// SAX handler for the matrix grammar; keeps arbitrarily large number
// literals exact by re-parsing their raw token text
struct MatrixSax : nlohmann::json_sax<nlohmann::json> {
    enum class Where { top, in_top_object, in_rows, in_row, done } where = Where::top;
    bool rows_seen = false;
    std::vector<std::vector<Int>> rows;
    std::string error;

    bool fail(const std::string& msg) {
        if (error.empty()) error = msg;
        return false;
    }
    bool entry(Int v) {
        if (where != Where::in_row) return fail("malformed matrix file: number outside a row");
        rows.back().push_back(std::move(v));
        return true;
    }

    bool null() override { return fail("non-integer entry"); }
    bool boolean(bool) override { return fail("non-integer entry"); }
    bool number_integer(number_integer_t v) override { return entry(Int(static_cast<long>(v))); }
    bool number_unsigned(number_unsigned_t v) override {
        return entry(Int(static_cast<unsigned long>(v)));
    }
    bool number_float(number_float_t, const string_t& raw) override {
        // huge integer literals arrive here; accept them when the raw token
        // is a plain decimal integer
        if (is_decimal_integer(raw)) return entry(Int(raw));
        return fail("non-integer entry");
    }
    bool string(string_t& s) override {
        if (where != Where::in_row) return fail("malformed matrix file: string outside a row");
        if (!is_decimal_integer(s)) return fail("non-integer entry");
        return entry(Int(s));
    }
    bool binary(binary_t&) override { return fail("non-integer entry"); }
    bool start_object(std::size_t) override {
        if (where != Where::top) return fail("malformed matrix file: unexpected object");
        where = Where::in_top_object;
        return true;
    }
    bool key(string_t& k) override {
        if (where != Where::in_top_object || k != "rows")
            return fail("malformed matrix file: expected a single \"rows\" key");
        return true;
    }
    bool end_object() override {
        if (where != Where::in_top_object) return fail("malformed matrix file");
        where = Where::done;
        return true;
    }
    bool start_array(std::size_t) override {
        if (where == Where::in_top_object && !rows_seen) {
            rows_seen = true;
            where = Where::in_rows;
            return true;
        }
        if (where == Where::in_rows) {
            rows.emplace_back();
            where = Where::in_row;
            return true;
        }
        return fail("malformed matrix file: unexpected array");
    }
    bool end_array() override {
        if (where == Where::in_row) {
            where = Where::in_rows;
            return true;
        }
        if (where == Where::in_rows) {
            where = Where::in_top_object;
            return true;
        }
        return fail("malformed matrix file");
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
        return fail("malformed JSON");
    }
};

}  // namespace

IntMatrix parse_matrix_text(const std::string& text) {
    MatrixSax sax;
    bool ok = nlohmann::json::sax_parse(text, &sax);
    if (!ok || !sax.error.empty())
        throw ParseError(sax.error.empty() ? "malformed JSON" : sax.error);
    if (!sax.rows_seen || sax.rows.empty()) throw ParseError("matrix has no rows");
    size_t d = sax.rows.size();
    size_t first_len = sax.rows[0].size();
    for (const auto& row : sax.rows)
        if (row.size() != first_len) throw ParseError("ragged rows");
    if (first_len != d) throw ParseError("matrix is not square");
    return IntMatrix::from_rows(sax.rows);
}

IntMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_text(buf.str());
}

ordered_json json_int(const Int& v) {
    static const Int kMax53 = Int(1) << 53;
    if (abs(v) <= kMax53) return ordered_json(static_cast<long long>(v.get_si()));
    return ordered_json(v.get_str());
}

std::string format_real6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double round6(double v) { return std::stod(format_real6(v)); }

namespace {

ordered_json poly_json(const IntPoly& f) {
    ordered_json a = ordered_json::array();
    for (const Int& c : f.coeffs()) a.push_back(json_int(c));
    return a;
}

ordered_json algnum_json(const AlgebraicNumber& a) {
    ordered_json j;
    j["minpoly"] = poly_json(a.minpoly());
    j["approx_re"] = round6(a.approx_re());
    j["approx_im"] = round6(a.approx_im());
    return j;
}

}  // namespace

ordered_json matrix_json(const IntMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (size_t i = 0; i < m.dim(); ++i) {
        ordered_json row = ordered_json::array();
        for (size_t j = 0; j < m.dim(); ++j) row.push_back(json_int(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    ordered_json out;
    out["rows"] = std::move(rows);
    return out;
}

ordered_json order_report(const OrderResult& r) {
    ordered_json out;
    out["command"] = "order";
    out["modulus"] = json_int(r.modulus);
    out["order"] = json_int(r.order);
    ordered_json cert = ordered_json::array();
    for (const OrderWitness& w : r.certificate) {
        ordered_json c;
        c["prime"] = json_int(w.prime);
        c["row"] = w.row;
        c["col"] = w.col;
        c["value"] = json_int(w.value);
        cert.push_back(std::move(c));
    }
    out["certificate"] = std::move(cert);
    return out;
}

ordered_json classify_report(const ExceptionalityVerdict& v) {
    ordered_json out;
    out["command"] = "classify";
    out["verdict"] = to_string(v.verdict);
    out["branch"] = to_string(v.branch);
    ordered_json w;
    if (std::holds_alternative<FiniteOrderWitness>(v.witness)) {
        w["order"] = std::get<FiniteOrderWitness>(v.witness).order;
    } else if (std::holds_alternative<IntegerPowerWitness>(v.witness)) {
        const auto& ip = std::get<IntegerPowerWitness>(v.witness);
        w["r"] = ip.r;
        w["base"] = json_int(ip.base);
        w["exponents"] = ip.exponents;
    } else if (std::holds_alternative<QuadraticUnitWitness>(v.witness)) {
        const auto& qu = std::get<QuadraticUnitWitness>(v.witness);
        w["r"] = qu.r;
        w["discriminant"] = json_int(qu.discriminant);
        w["generator"] = algnum_json(qu.generator);
        w["exponents"] = qu.exponents;
        w["zeta_orders"] = qu.zeta_orders;
    } else if (std::holds_alternative<IndependentPair>(v.witness)) {
        const auto& p = std::get<IndependentPair>(v.witness);
        w["independent_pair"] = ordered_json::array({p.i, p.j});
    }
    out["witness"] = w.is_null() ? ordered_json(nullptr) : w;
    ordered_json bounds;
    bounds["exp_bound"] = v.bounds.exp_bound;
    bounds["r_bound"] = v.bounds.r_bound;
    out["search_bounds"] = std::move(bounds);
    ordered_json eigs = ordered_json::array();
    for (const EigenInfo& e : v.eigenvalues) {
        ordered_json ej = algnum_json(e.value);
        ej["multiplicity"] = e.multiplicity;
        eigs.push_back(std::move(ej));
    }
    out["eigenvalues"] = std::move(eigs);
    return out;
}

ordered_json entropy_report(const EntropyResult& e) {
    ordered_json out;
    out["command"] = "entropy";
    out["eta"] = round6(e.eta);
    out["error_bound"] = round6(e.error_bound == 0 ? 0 : e.error_bound);
    ordered_json roots = ordered_json::array();
    for (const ExpandingRootInfo& r : e.expanding_roots) {
        ordered_json rj = algnum_json(r.root);
        rj["log_modulus"] = round6((r.log_modulus_lo + r.log_modulus_hi) / 2);
        roots.push_back(std::move(rj));
    }
    out["expanding_roots"] = std::move(roots);
    return out;
}

std::string scan_csv(const ScanResult& s, const std::string& matrix_name, const Int& n_min,
                     const Int& n_max) {
    std::ostringstream out;
    out << "# command=scan matrix=" << matrix_name << " n_min=" << n_min.get_str()
        << " n_max=" << n_max.get_str() << "\n";
    out << "N,ord,ratio\n";
    for (const ScanRecord& r : s.records)
        out << r.modulus.get_str() << "," << r.ord.get_str() << "," << format_real6(r.ratio) << "\n";
    out << "# skipped_noninvertible=" << s.skipped << "\n";
    if (!s.records.empty()) {
        const ScanRecord& m = s.records[s.min_index];
        out << "# min_ratio=" << format_real6(m.ratio) << " at_N=" << m.modulus.get_str() << "\n";
    }
    return out.str();
}

std::string gcd_stream_csv(const GcdStream& s, const std::string& matrix_name,
                           unsigned long n_max, unsigned long tail) {
    std::ostringstream out;
    out << "# command=gcd-pow matrix=" << matrix_name << " n_max=" << n_max << " tail=" << tail
        << "\n";
    out << "n,gcd,log_gcd,ratio\n";
    for (const GcdRecord& r : s.records)
        out << r.n << "," << r.g.get_str() << "," << format_real6(r.log_g) << ","
            << format_real6(r.ratio) << "\n";
    if (!s.records.empty())
        out << "# tail_window=" << s.tail_window << " tail_max_ratio=" << format_real6(s.tail_max_ratio)
            << " at_n=" << s.tail_argmax << "\n";
    return out.str();
}

std::string period_sequence_csv(const PeriodSequence& s, const std::string& matrix_name,
                                unsigned long r, unsigned long k_max) {
    std::ostringstream out;
    out << "# command=construct matrix=" << matrix_name << " r=" << r << " k_max=" << k_max << "\n";
    out << "k,N_k,ord,ratio\n";
    for (const PeriodRow& row : s.rows)
        out << row.k << "," << row.modulus.get_str() << "," << row.ord.get_str() << ","
            << format_real6(row.ratio) << "\n";
    if (s.finite_order) out << "# finite_order_at=" << s.finite_order_at << "\n";
    return out.str();
}

}  // namespace matper
