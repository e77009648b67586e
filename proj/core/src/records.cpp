#include "cubext/records.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cubext {

RecordFormat parse_record_format(const std::string& s) {
  if (s == "jsonl") return RecordFormat::Jsonl;
  if (s == "csv") return RecordFormat::Csv;
  throw std::invalid_argument("unknown record format '" + s + "' (expected jsonl or csv)");
}

namespace {

nlohmann::json pair(RingElem e) { return nlohmann::json::array({e.x, e.y}); }

RingElem unpair(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::runtime_error("record: expected [x, y]");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

}  // namespace

std::string to_jsonl(const FieldRecord& r) {
  nlohmann::ordered_json j;
  j["format_version"] = kRecordFormatVersion;
  j["d_K"] = r.d_K;
  j["a"] = pair(r.form.a);
  j["b"] = pair(r.form.b);
  j["c"] = pair(r.form.c);
  j["d"] = pair(r.form.d);
  j["disc"] = pair(r.disc);
  j["disc_norm"] = r.disc_norm;
  return j.dump();
}

FieldRecord parse_jsonl(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  if (j.at("format_version").get<int>() != kRecordFormatVersion)
    throw std::runtime_error("record: unsupported format_version");
  FieldRecord r;
  r.d_K = j.at("d_K").get<int>();
  r.form = {unpair(j.at("a")), unpair(j.at("b")), unpair(j.at("c")), unpair(j.at("d"))};
  r.disc = unpair(j.at("disc"));
  r.disc_norm = j.at("disc_norm").get<std::int64_t>();
  return r;
}

std::string to_csv_row(const FieldRecord& r) {
  std::ostringstream os;
  os << r.d_K;
  for (RingElem e : {r.form.a, r.form.b, r.form.c, r.form.d, r.disc}) os << ',' << e.x << ',' << e.y;
  os << ',' << r.disc_norm;
  return os.str();
}

StreamSink::StreamSink(std::ostream& os, RecordFormat fmt) : os_(os), fmt_(fmt) {}

void StreamSink::accept(const FieldRecord& r) {
  if (fmt_ == RecordFormat::Jsonl) {
    os_ << to_jsonl(r) << '\n';
    return;
  }
  if (!header_done_) {
    os_ << "# cubext-records format_version=" << kRecordFormatVersion << '\n'
        << "d_K,a_x,a_y,b_x,b_y,c_x,c_y,d_x,d_y,disc_x,disc_y,disc_norm\n";
    header_done_ = true;
  }
  os_ << to_csv_row(r) << '\n';
}

void StreamSink::finish() {
  if (fmt_ == RecordFormat::Csv && !header_done_) {
    os_ << "# cubext-records format_version=" << kRecordFormatVersion << '\n'
        << "d_K,a_x,a_y,b_x,b_y,c_x,c_y,d_x,d_y,disc_x,disc_y,disc_norm\n";
    header_done_ = true;
  }
  os_.flush();
}

}  // namespace cubext
