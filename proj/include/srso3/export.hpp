#pragma once

// Plot-ready record export.  Each run emits one record kind; CSV gets a
// header row, JSON an array of flat objects.  All floats are serialized with
// 17 significant digits so values round-trip exactly.

#include <iosfwd>
#include <memory>
#include <string>

#include "srso3/mat3.hpp"

namespace srso3 {

enum class ExportFormat { Csv, Json };

ExportFormat parse_format(const std::string& name); // "csv" | "json"

struct GeodesicSampleRow {
    double t = 0.0, phi0 = 0.0, beta = 0.0;
    Mat3 r;
};

struct CutPointRow {
    double beta = 0.0, t1 = 0.0;
    const char* branch = "";
    Mat3 r;
};

struct SpherePointRow {
    double phi0 = 0.0, beta = 0.0, t = 0.0;
    Mat3 r;
};

struct CheckRow {
    std::string suite;
    std::string id;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    double seconds = 0.0;
};

class RecordWriter {
public:
    virtual ~RecordWriter();
    virtual void write(const GeodesicSampleRow& row) = 0;
    virtual void write(const CutPointRow& row) = 0;
    virtual void write(const SpherePointRow& row) = 0;
    virtual void write(const CheckRow& row) = 0;
    virtual void finish() = 0;
};

std::unique_ptr<RecordWriter> make_writer(ExportFormat format, std::ostream& os);

// %.17g
std::string format_double(double v);

} // namespace srso3
