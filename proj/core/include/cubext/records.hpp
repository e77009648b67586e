#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cubext/forms.hpp"

namespace cubext {

inline constexpr int kRecordFormatVersion = 1;

struct FieldRecord {
  int d_K = 0;
  CubicForm form;  // canonical representative of its class
  RingElem disc;
  std::int64_t disc_norm = 0;

  friend bool operator==(const FieldRecord&, const FieldRecord&) = default;
};

class RecordSink {
 public:
  virtual ~RecordSink() = default;
  virtual void accept(const FieldRecord& r) = 0;
  virtual void finish() {}
};

class CountingSink : public RecordSink {
 public:
  void accept(const FieldRecord&) override { ++count_; }
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_ = 0;
};

class VectorSink : public RecordSink {
 public:
  void accept(const FieldRecord& r) override { records.push_back(r); }
  std::vector<FieldRecord> records;
};

enum class RecordFormat { Jsonl, Csv };
RecordFormat parse_record_format(const std::string& s);

// JSONL: one object per line with format_version, d_K, a, b, c, d and disc as [x, y]
// coordinates on the basis {1, w}, and disc_norm.
// CSV: a "# cubext-records format_version=1" line, a header line, then one row per record.
class StreamSink : public RecordSink {
 public:
  StreamSink(std::ostream& os, RecordFormat fmt);
  void accept(const FieldRecord& r) override;
  void finish() override;

 private:
  std::ostream& os_;
  RecordFormat fmt_;
  bool header_done_ = false;
};

std::string to_jsonl(const FieldRecord& r);
std::string to_csv_row(const FieldRecord& r);
FieldRecord parse_jsonl(const std::string& line);

}  // namespace cubext
