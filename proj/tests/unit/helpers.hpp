#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace test_helpers {

/// Self-cleaning file under the system temp dir. Names are namespaced per
/// process so parallel ctest invocations do not collide.
class TempFile {
public:
    explicit TempFile(const std::string& name) {
        path_ = std::filesystem::temp_directory_path() /
                ("fastlexrank_test_" + std::to_string(::getpid()) + "_" + name);
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;

    const std::string& str() const {
        cached_ = path_.string();
        return cached_;
    }

    void write(const std::string& content) const {
        std::ofstream out(path_, std::ios::binary);
        out << content;
    }

    std::string read() const {
        std::ifstream in(path_, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

private:
    std::filesystem::path path_;
    mutable std::string cached_;
};

}  // namespace test_helpers
