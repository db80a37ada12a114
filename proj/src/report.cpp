#include "cmpgeo/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cmpgeo/varifold_io.hpp"

namespace cmpgeo {

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::set(const std::string& key, double value) {
  lines_.emplace_back(key, format_double(value));
}
void Report::set(const std::string& key, const std::string& value) {
  lines_.emplace_back(key, value);
}
void Report::set(const std::string& key, const char* value) {
  lines_.emplace_back(key, std::string(value));
}
void Report::set(const std::string& key, bool value) {
  lines_.emplace_back(key, value ? "true" : "false");
}
void Report::set(const std::string& key, long long value) {
  lines_.emplace_back(key, std::to_string(value));
}

void Report::series(const std::string& name, const std::vector<double>& xs,
                    const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("Report::series: length mismatch");
  series_.push_back({name, xs, ys});
}

void Report::meta(const std::string& key, const std::string& value) {
  meta_.emplace_back(key, value);
}

void Report::verdict(const std::string& v) { verdict_ = v; }

std::string Report::to_text() const {
  std::ostringstream os;
  os << "cmpgeo-report 1\n";
  os << "command " << command_ << "\n";
  os << "version " << kToolkitVersion << "\n";
  for (const auto& [k, v] : lines_) os << k << " " << v << "\n";
  for (const auto& s : series_) {
    os << "series " << s.name << " " << s.xs.size() << "\n";
    for (size_t i = 0; i < s.xs.size(); ++i)
      os << "  " << format_double(s.xs[i]) << " " << format_double(s.ys[i]) << "\n";
  }
  if (!verdict_.empty()) os << "verdict " << verdict_ << "\n";
  for (const auto& [k, v] : meta_) os << "# " << k << " " << v << "\n";
  return os.str();
}

void Report::write(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("Report::write: cannot open " + path);
  os << to_text();
}

void Report::write_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("Report::write_csv: cannot open " + path);
  for (const auto& s : series_) {
    os << s.name << "_x," << s.name << "_y\n";
    for (size_t i = 0; i < s.xs.size(); ++i)
      os << format_double(s.xs[i]) << "," << format_double(s.ys[i]) << "\n";
  }
}

}  // namespace cmpgeo
