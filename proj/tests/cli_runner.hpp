#ifndef WITNESSKIT_TESTS_CLI_RUNNER_HPP
#define WITNESSKIT_TESTS_CLI_RUNNER_HPP

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace cli {

struct Result {
    int code = -1;
    std::string out;
};

/// Runs the witnesskit binary with `args`; stderr is discarded unless
/// `keep_stderr` folds it into `out`.
inline Result run(const std::string& binary, const std::string& args, bool keep_stderr = false)
{
    const std::string cmd = "\"" + binary + "\" " + args + (keep_stderr ? " 2>&1" : " 2>/dev/null");
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    out << text;
}

inline std::filesystem::path scratch(const std::string& root)
{
    std::filesystem::path dir(root);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace cli

#endif
