// Shared helpers for tests that touch the filesystem or drive the CLI binary.
#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace testsupport {

namespace fs = std::filesystem;

/// Fresh directory under the system temp root, removed by the caller's
/// ScratchDir destructor.
class ScratchDir {
public:
    explicit ScratchDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = fs::temp_directory_path() /
                ("ure-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter.fetch_add(1)));
        fs::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

#ifdef URE_CLI_PATH
/// Runs the built CLI with `args`, capturing exit code, stdout and stderr.
inline CliResult run_cli(const std::string& args, const fs::path& workdir) {
    const fs::path out_path = workdir / "_stdout.txt";
    const fs::path err_path = workdir / "_stderr.txt";
    const std::string command = std::string(URE_CLI_PATH) + " " + args + " > '" +
                                out_path.string() + "' 2> '" + err_path.string() + "'";
    const int status = std::system(command.c_str());

    CliResult result;
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    fs::remove(out_path);
    fs::remove(err_path);
    return result;
}
#endif

} // namespace testsupport
