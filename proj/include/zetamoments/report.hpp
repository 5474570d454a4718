#pragma once

// Report emission. A report is a list of flat records whose fields keep
// their declaration order; reals are written as full-precision decimal
// strings so JSON and CSV output is lossless and byte-stable.

#include "zetamoments/moments.hpp"
#include "zetamoments/mollifier.hpp"
#include "zetamoments/zero_cache.hpp"

#include <string>
#include <vector>

namespace zm {

enum class OutputFormat { json, csv };

struct Field {
    std::string name;
    std::string value;
    bool quoted = true;  // false for integers and booleans
};

class Record {
public:
    Record& add(std::string name, const std::string& v);
    Record& add(std::string name, const char* v);
    Record& add(std::string name, const Real& v);
    Record& add(std::string name, const Rational& v);
    Record& add(std::string name, long v);
    Record& add(std::string name, std::size_t v) { return add(std::move(name), static_cast<long>(v)); }
    Record& add(std::string name, int v) { return add(std::move(name), static_cast<long>(v)); }
    Record& add(std::string name, bool v);
    Record& add(std::string name, double v);  // shortest round-trip form
    Record& add(std::string name, Status s) { return add(std::move(name), status_name(s)); }

    const std::vector<Field>& fields() const { return fields_; }
    const Field* find(const std::string& name) const;

private:
    std::vector<Field> fields_;
};

struct Report {
    std::string kind;
    Status status = Status::pass;
    std::vector<std::string> notes;
    std::vector<Record> rows;

    /// Folds a row status into the overall one: fail dominates inconclusive.
    void merge(Status s);
};

/// JSON: {"kind", "status", "notes", "rows"}. CSV: a header from the union
/// of field names in first-seen order, then one line per row.
std::string render(const Report& report, OutputFormat format);

/// 0 pass, 1 fail, 2 inconclusive.
int exit_code(Status s);

Record to_record(const MomentReport& r);
Record to_record(const HolderReport& r);
Record to_record(const LandauReport& r);
Record to_record(const Prop4Report& r);
Record to_record(const MeanValueReport& r);
Record cache_record(const ZeroCacheFile& f);
/// One row per block j = 1..J.
std::vector<Record> schedule_records(const MollifierSchedule& s);

/// Coefficient map as a JSON object {"n": ["re", "im"]}, keys ascending.
std::string coefficients_json(const RationalPoly& p, Precision prec);
std::string coefficients_json(const RealPoly& p, Precision prec);
std::string coefficients_json(const ComplexPoly& p, Precision prec);

}  // namespace zm
