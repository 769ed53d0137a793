#include "srso3/export.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace srso3 {

RecordWriter::~RecordWriter() = default;

ExportFormat parse_format(const std::string& name) {
    if (name == "csv") return ExportFormat::Csv;
    if (name == "json") return ExportFormat::Json;
    throw std::invalid_argument("unknown format: " + name + " (expected csv or json)");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

const char* kMatrixCols[] = {"r11", "r12", "r13", "r21", "r22", "r23",
                             "r31", "r32", "r33"};

class CsvWriter final : public RecordWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void write(const GeodesicSampleRow& row) override {
        header("t,phi0,beta,r11,r12,r13,r21,r22,r23,r31,r32,r33,x,y,z");
        os_ << format_double(row.t) << ',' << format_double(row.phi0) << ','
            << format_double(row.beta);
        matrix(row.r);
        os_ << ',' << format_double(row.r(0, 0)) << ',' << format_double(row.r(1, 0))
            << ',' << format_double(row.r(2, 0)) << '\n';
    }

    void write(const CutPointRow& row) override {
        header("beta,t1,branch,r11,r12,r13,r21,r22,r23,r31,r32,r33");
        os_ << format_double(row.beta) << ',' << format_double(row.t1) << ','
            << row.branch;
        matrix(row.r);
        os_ << '\n';
    }

    void write(const SpherePointRow& row) override {
        header("phi0,beta,t,r11,r12,r13,r21,r22,r23,r31,r32,r33,x,y,z");
        os_ << format_double(row.phi0) << ',' << format_double(row.beta) << ','
            << format_double(row.t);
        matrix(row.r);
        os_ << ',' << format_double(row.r(0, 0)) << ',' << format_double(row.r(1, 0))
            << ',' << format_double(row.r(2, 0)) << '\n';
    }

    void write(const CheckRow& row) override {
        header("suite,check,pass,value,threshold,seconds");
        os_ << row.suite << ',' << row.id << ',' << (row.pass ? 1 : 0) << ','
            << format_double(row.value) << ',' << format_double(row.threshold) << ','
            << format_double(row.seconds) << '\n';
    }

    void finish() override { os_.flush(); }

private:
    void header(const char* h) {
        if (!header_written_) {
            os_ << h << '\n';
            header_written_ = true;
        }
    }
    void matrix(const Mat3& m) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) os_ << ',' << format_double(m(i, j));
    }

    std::ostream& os_;
    bool header_written_ = false;
};

class JsonWriter final : public RecordWriter {
public:
    explicit JsonWriter(std::ostream& os) : os_(os) {}

    void write(const GeodesicSampleRow& row) override {
        open();
        os_ << "{\"t\":" << format_double(row.t) << ",\"phi0\":" << format_double(row.phi0)
            << ",\"beta\":" << format_double(row.beta);
        matrix(row.r);
        os_ << ",\"x\":" << format_double(row.r(0, 0))
            << ",\"y\":" << format_double(row.r(1, 0))
            << ",\"z\":" << format_double(row.r(2, 0)) << '}';
    }

    void write(const CutPointRow& row) override {
        open();
        os_ << "{\"beta\":" << format_double(row.beta)
            << ",\"t1\":" << format_double(row.t1) << ",\"branch\":\"" << row.branch
            << '"';
        matrix(row.r);
        os_ << '}';
    }

    void write(const SpherePointRow& row) override {
        open();
        os_ << "{\"phi0\":" << format_double(row.phi0)
            << ",\"beta\":" << format_double(row.beta) << ",\"t\":" << format_double(row.t);
        matrix(row.r);
        os_ << ",\"x\":" << format_double(row.r(0, 0))
            << ",\"y\":" << format_double(row.r(1, 0))
            << ",\"z\":" << format_double(row.r(2, 0)) << '}';
    }

    void write(const CheckRow& row) override {
        open();
        os_ << "{\"suite\":\"" << row.suite << "\",\"check\":\"" << row.id
            << "\",\"pass\":" << (row.pass ? "true" : "false")
            << ",\"value\":" << format_double(row.value)
            << ",\"threshold\":" << format_double(row.threshold)
            << ",\"seconds\":" << format_double(row.seconds) << '}';
    }

    void finish() override {
        if (!opened_)
            os_ << "[]";
        else
            os_ << "]";
        os_ << '\n';
        os_.flush();
    }

private:
    void open() {
        os_ << (opened_ ? ",\n" : "[\n");
        opened_ = true;
    }
    void matrix(const Mat3& m) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                os_ << ",\"" << kMatrixCols[3 * i + j]
                    << "\":" << format_double(m(i, j));
    }

    std::ostream& os_;
    bool opened_ = false;
};

} // namespace

std::unique_ptr<RecordWriter> make_writer(ExportFormat format, std::ostream& os) {
    if (format == ExportFormat::Csv) return std::make_unique<CsvWriter>(os);
    return std::make_unique<JsonWriter>(os);
}

} // namespace srso3
