#pragma once

#include <string>
#include <vector>

namespace nseobs {

/// Minimal polyline plot writer (optionally log-scaled axes). No timestamps
/// or other run-varying content, so identical data gives identical files.
class LinePlot {
 public:
  LinePlot(std::string title, std::string xlabel, std::string ylabel, bool logx, bool logy)
      : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)),
        logx_(logx), logy_(logy) {}

  void add_series(const std::string& name, const std::vector<double>& x,
                  const std::vector<double>& y);

  std::string render() const;
  void write(const std::string& path) const;

 private:
  struct Series {
    std::string name;
    std::vector<double> x, y;
  };
  std::string title_, xlabel_, ylabel_;
  bool logx_, logy_;
  std::vector<Series> series_;
};

}  // namespace nseobs
