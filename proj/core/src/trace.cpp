#include "ntsim/trace.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ntsim {

namespace code {

bool
is_interest_transmission(std::string_view event) noexcept
{
  return event == kBeaconTx || event == kBitmapTx || event == kPieceReq || event == kInterestFwd;
}

bool
is_transmission(std::string_view event) noexcept
{
  return is_interest_transmission(event) || event == kDataTx || event == kDataFwd;
}

bool
is_application(std::string_view event) noexcept
{
  return event == kBeaconTx || event == kBitmapTx || event == kPieceReq || event == kPieceRx ||
         event == kCompleted || event == kOwnApp || event == kForeignLearn ||
         event == kForeignFwd;
}

bool
is_drop(std::string_view event) noexcept
{
  return event == kProbDrop || event == kForeignLearn || event == kUnknownDrop ||
         event == kDupDrop || event == kHopDrop || event == kDataUnsolicited || event == kLoss ||
         event == kCollision;
}

} // namespace code

std::optional<std::string_view>
detail_value(std::string_view detail, std::string_view key)
{
  std::size_t pos = 0;
  while (pos < detail.size()) {
    auto end = detail.find(' ', pos);
    auto item = detail.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    if (item.size() > key.size() && item.substr(0, key.size()) == key && item[key.size()] == '=') {
      return item.substr(key.size() + 1);
    }
    if (end == std::string_view::npos) {
      break;
    }
    pos = end + 1;
  }
  return std::nullopt;
}

namespace {

void
write_field(std::ostream& os, std::string_view field)
{
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    os << field;
    return;
  }
  os << '"';
  for (char c : field) {
    if (c == '"') {
      os << '"';
    }
    os << c;
  }
  os << '"';
}

std::vector<std::string>
split_csv_line(const std::string& line)
{
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        }
        else {
          quoted = false;
        }
      }
      else {
        fields.back() += c;
      }
    }
    else if (c == '"') {
      quoted = true;
    }
    else if (c == ',') {
      fields.emplace_back();
    }
    else {
      fields.back() += c;
    }
  }
  return fields;
}

template<typename T>
T
parse_number(const std::string& text, const std::filesystem::path& path, std::size_t line)
{
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" + text + "'");
  }
  return value;
}

std::ofstream
open_for_write(const std::filesystem::path& path)
{
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  return os;
}

void
finish(std::ofstream& os, const std::filesystem::path& path)
{
  os.flush();
  if (!os) {
    throw IoError("write failed: " + path.string());
  }
}

} // namespace

std::string
format_fixed(double value, int digits)
{
  if (value == 0.0) {
    value = 0.0; // fold -0.0
  }
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed, digits);
  if (ec != std::errc{}) {
    return "nan";
  }
  return std::string(buf.data(), ptr);
}

void
write_trace_csv(std::span<const TraceRecord> trace, const std::filesystem::path& path)
{
  auto os = open_for_write(path);
  os << "time_us,node,event,name,detail\n";
  for (const auto& r : trace) {
    os << r.time_us << ',' << to_index(r.node) << ',';
    write_field(os, r.event);
    os << ',';
    write_field(os, r.name);
    os << ',';
    write_field(os, r.detail);
    os << '\n';
  }
  finish(os, path);
}

std::vector<TraceRecord>
read_trace_csv(const std::filesystem::path& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw IoError("cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(is, line) || line != "time_us,node,event,name,detail") {
    throw IoError(path.string() + ": missing or unexpected trace header");
  }

  std::vector<TraceRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    auto fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 5 fields");
    }
    TraceRecord r;
    r.time_us = parse_number<SimTime>(fields[0], path, lineno);
    r.node = NodeId{parse_number<std::uint32_t>(fields[1], path, lineno)};
    r.event = std::move(fields[2]);
    r.name = std::move(fields[3]);
    r.detail = std::move(fields[4]);
    out.push_back(std::move(r));
  }
  return out;
}

void
write_positions_csv(std::span<const PositionSample> samples, const std::filesystem::path& path)
{
  auto os = open_for_write(path);
  os << "time_us,node,x,y,heading,speed\n";
  for (const auto& s : samples) {
    os << s.time_us << ',' << to_index(s.node) << ',' << format_fixed(s.position.x) << ','
       << format_fixed(s.position.y) << ',' << format_fixed(s.heading) << ','
       << format_fixed(s.speed) << '\n';
  }
  finish(os, path);
}

} // namespace ntsim
