#include "eit3d/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace eit3d {

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : impl_(new Impl) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    impl_->out.open(path);
    if (!impl_->out) throw std::runtime_error("cannot open " + path.string());
    for (std::size_t i = 0; i < columns.size(); ++i)
        impl_->out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
        impl_->out << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

void write_sidecar(const std::filesystem::path& csv_path,
                   const std::vector<std::pair<std::string, std::string>>& entries) {
    std::filesystem::path side = csv_path;
    side.replace_extension(".config.txt");
    std::ofstream out(side);
    for (const auto& [k, v] : entries) out << k << " = " << v << "\n";
}

}  // namespace eit3d
