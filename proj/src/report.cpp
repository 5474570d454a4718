#include "zetamoments/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace zm {

namespace {

std::string csv_escape(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

template <class C>
std::string coefficients_json_impl(const DirichletPoly<C>& p, Precision prec) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [n, c] : p.coeffs()) {
        const Complex z = to_complex(c, prec);
        j[std::to_string(n)] = {z.re.to_string(), z.im.to_string()};
    }
    return j.dump();
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

Record& Record::add(std::string name, const std::string& v) {
    fields_.push_back({std::move(name), v, true});
    return *this;
}

Record& Record::add(std::string name, const char* v) { return add(std::move(name), std::string(v)); }

Record& Record::add(std::string name, const Real& v) { return add(std::move(name), v.to_string()); }

Record& Record::add(std::string name, const Rational& v) { return add(std::move(name), v.get_str()); }

Record& Record::add(std::string name, long v) {
    fields_.push_back({std::move(name), std::to_string(v), false});
    return *this;
}

Record& Record::add(std::string name, bool v) {
    fields_.push_back({std::move(name), v ? "true" : "false", false});
    return *this;
}

Record& Record::add(std::string name, double v) { return add(std::move(name), format_double(v)); }

const Field* Record::find(const std::string& name) const {
    for (const auto& f : fields_)
        if (f.name == name) return &f;
    return nullptr;
}

void Report::merge(Status s) {
    if (s == Status::fail || status == Status::fail) {
        status = Status::fail;
    } else if (s == Status::inconclusive) {
        status = Status::inconclusive;
    }
}

std::string render(const Report& report, OutputFormat format) {
    if (format == OutputFormat::json) {
        nlohmann::ordered_json j;
        j["kind"] = report.kind;
        j["status"] = status_name(report.status);
        j["notes"] = report.notes;
        auto rows = nlohmann::ordered_json::array();
        for (const auto& r : report.rows) {
            nlohmann::ordered_json o = nlohmann::ordered_json::object();
            for (const auto& f : r.fields()) {
                if (f.quoted) {
                    o[f.name] = f.value;
                } else {
                    o[f.name] = nlohmann::ordered_json::parse(f.value);
                }
            }
            rows.push_back(std::move(o));
        }
        j["rows"] = std::move(rows);
        return j.dump(2) + "\n";
    }
    std::vector<std::string> columns;
    for (const auto& r : report.rows)
        for (const auto& f : r.fields())
            if (std::find(columns.begin(), columns.end(), f.name) == columns.end()) columns.push_back(f.name);
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << csv_escape(columns[c]);
    out << '\n';
    for (const auto& r : report.rows) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out << ',';
            if (const Field* f = r.find(columns[c])) out << csv_escape(f->value);
        }
        out << '\n';
    }
    return out.str();
}

int exit_code(Status s) {
    switch (s) {
        case Status::pass: return 0;
        case Status::fail: return 1;
        case Status::inconclusive: return 2;
    }
    return 1;
}

Record to_record(const MomentReport& r) {
    Record rec;
    rec.add("k", r.k).add("t_lo", r.t_lo).add("t_hi", r.t_hi).add("zero_count", r.zero_count);
    rec.add("J_value", r.J_value).add("normalized", r.normalized);
    for (const auto& [name, v] : r.reference_constants) rec.add(name, v);
    return rec;
}

Record to_record(const HolderReport& r) {
    Record rec;
    rec.add("k", r.k).add("zero_count", r.zero_count).add("lhs", r.lhs).add("rhs", r.rhs).add("slack", r.slack);
    rec.add("tolerance", r.tolerance).add("conjugate_deviation", r.conjugate_deviation).add("status", r.status);
    return rec;
}

Record to_record(const LandauReport& r) {
    Record rec;
    rec.add("a", r.a).add("b", r.b).add("t_lo", r.t_lo).add("t_hi", r.t_hi).add("zero_count", r.zero_count);
    rec.add("empirical_re", r.empirical.re).add("empirical_im", r.empirical.im);
    rec.add("main_term_re", r.main_term.re).add("main_term_im", r.main_term.im);
    rec.add("error_budget", r.error_budget).add("budget_constant", r.budget_constant).add("deviation", r.deviation);
    rec.add("status", r.within_budget() ? Status::pass : Status::fail);
    return rec;
}

Record to_record(const Prop4Report& r) {
    Record rec;
    rec.add("k", r.k).add("zero_count", r.zero_count).add("lhs", r.lhs).add("lhs_imag", r.lhs_imag);
    rec.add("main1", r.main1).add("main2", r.main2).add("main_sum", r.main1 + r.main2);
    rec.add("square_sum_exact", r.square_sum_exact).add("support_size", r.support_size);
    return rec;
}

Record to_record(const MeanValueReport& r) {
    Record rec;
    rec.add("m", r.m).add("lhs", r.lhs).add("rhs_main", r.rhs_main).add("ratio", r.ratio);
    return rec;
}

Record cache_record(const ZeroCacheFile& f) {
    Record rec;
    rec.add("format_version", f.format_version).add("prec_bits", static_cast<long>(f.prec_bits));
    rec.add("t_lo", f.t_lo).add("t_hi", f.t_hi).add("zero_count", f.zero_count);
    rec.add("content_digest", f.content_digest);
    return rec;
}

std::vector<Record> schedule_records(const MollifierSchedule& s) {
    std::vector<Record> rows;
    for (long j = 1; j <= s.J; ++j) {
        Record rec;
        rec.add("j", j).add("J", s.J).add("M", s.M).add("loglogT", s.loglogT);
        rec.add("loglog_overridden", s.loglog_overridden);
        rec.add("alpha", s.alphas[j]).add("ell", s.ells[j]);
        rec.add("interval_lo", s.upper[j - 1]).add("interval_hi", s.upper[j]);
        rows.push_back(std::move(rec));
    }
    return rows;
}

std::string coefficients_json(const RationalPoly& p, Precision prec) { return coefficients_json_impl(p, prec); }
std::string coefficients_json(const RealPoly& p, Precision prec) { return coefficients_json_impl(p, prec); }
std::string coefficients_json(const ComplexPoly& p, Precision prec) { return coefficients_json_impl(p, prec); }

}  // namespace zm
