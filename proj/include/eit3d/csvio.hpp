#ifndef EIT3D_CSVIO_HPP
#define EIT3D_CSVIO_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace eit3d {

/// Fixed 17-significant-digit decimal formatting; makes repeated runs diff
/// byte for byte.
std::string format17(double v);

class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    void row(const std::vector<std::string>& cells);

  private:
    struct Impl;
    Impl* impl_;
};

/// Writes the resolved configuration next to a CSV as <stem>.config.txt.
void write_sidecar(const std::filesystem::path& csv_path,
                   const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace eit3d

#endif
