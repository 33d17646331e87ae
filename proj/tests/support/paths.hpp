#pragma once
// Repo-relative paths and scratch directories for tests.

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

namespace kgforge::testsupport {

inline std::filesystem::path repo_root() { return std::filesystem::path(KGFORGE_REPO_ROOT); }

inline std::filesystem::path fixtures_dir() { return repo_root() / "fixtures"; }
inline std::filesystem::path prompts_dir() { return repo_root() / "prompts"; }
inline std::filesystem::path test_data_dir() { return repo_root() / "tests" / "data"; }

// Fresh scratch directory under the system temp dir; removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("kgforge-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string str() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

}  // namespace kgforge::testsupport
