#include "casimir/cli/sweep.hpp"

#include "casimir/model.hpp"

#include <charconv>
#include <cmath>

namespace casimir::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

template <class T>
T parse_field(std::string_view field, std::string_view what, std::string_view text) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw DomainError("sweep '" + std::string(text) + "': bad " + std::string(what) + " '" +
                      std::string(field) + "'");
  return value;
}

} // namespace

SweepSpec parse_sweep(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4 && parts.size() != 5)
    throw DomainError("sweep '" + std::string(text) + "': expected name:start:stop:points[:lin|log]");
  SweepSpec spec;
  spec.parameter = std::string(parts[0]);
  spec.start = parse_field<double>(parts[1], "start", text);
  spec.stop = parse_field<double>(parts[2], "stop", text);
  spec.points = parse_field<int>(parts[3], "point count", text);
  if (parts.size() == 5) {
    if (parts[4] == "log")
      spec.spacing = Spacing::Log;
    else if (parts[4] != "lin")
      throw DomainError("sweep '" + std::string(text) + "': spacing must be lin or log");
  }
  validate(spec);
  return spec;
}

void validate(const SweepSpec& spec) {
  bool known = false;
  for (auto name : kSweepParameters) known = known || name == spec.parameter;
  if (!known) throw DomainError("unknown sweep parameter '" + spec.parameter + "'");
  if (!std::isfinite(spec.start) || !std::isfinite(spec.stop) || !(spec.start < spec.stop))
    throw DomainError("sweep requires finite start < stop");
  if (spec.points < 2) throw DomainError("sweep requires at least 2 points");
  if (spec.spacing == Spacing::Log && !(spec.start > 0))
    throw DomainError("log sweep requires start > 0");
}

std::vector<double> grid(const SweepSpec& spec) {
  validate(spec);
  const int n = spec.points;
  std::vector<double> out(n);
  const bool log = spec.spacing == Spacing::Log;
  const double lo = log ? std::log(spec.start) : spec.start;
  const double hi = log ? std::log(spec.stop) : spec.stop;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    const double v = lo + t * (hi - lo);
    out[i] = log ? std::exp(v) : v;
  }
  out.front() = spec.start;
  out.back() = spec.stop;
  return out;
}

} // namespace casimir::cli
