// Structured text reports for the CLI: ordered key-value lines with nested
// numeric series, plus optional CSV emission of the series.
//
// Determinism contract: for a fixed command, config and seed, the non-'#'
// lines of the report are bitwise reproducible.  Wall-clock and other
// incidental metadata live on '#' lines.

#ifndef CMPGEO_REPORT_HPP
#define CMPGEO_REPORT_HPP

#include <string>
#include <vector>

namespace cmpgeo {

inline constexpr const char* kToolkitVersion = "0.1.0";

class Report {
 public:
  explicit Report(std::string command);

  void set(const std::string& key, double value);
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value);
  void set(const std::string& key, bool value);
  void set(const std::string& key, long long value);
  void set(const std::string& key, int value) { set(key, static_cast<long long>(value)); }
  void series(const std::string& name, const std::vector<double>& xs,
              const std::vector<double>& ys);
  void meta(const std::string& key, const std::string& value);  // '#' line
  void verdict(const std::string& v);
  const std::string& verdict() const { return verdict_; }

  std::string to_text() const;
  void write(const std::string& path) const;
  void write_csv(const std::string& path) const;

 private:
  struct Series {
    std::string name;
    std::vector<double> xs, ys;
  };
  std::string command_;
  std::vector<std::pair<std::string, std::string>> lines_;
  std::vector<Series> series_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::string verdict_;
};

}  // namespace cmpgeo

#endif  // CMPGEO_REPORT_HPP
