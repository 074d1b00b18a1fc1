// Data-driven end-to-end checks for the command-line binary. Each case is a
// pair of files in the golden directory: <name>.cmd holds the argument line,
// <name>.out the expected standard output byte for byte. An optional
// <name>.code holds the expected exit status (default 0). The error stream
// is not part of the contract and is discarded.
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        std::exit(2);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct RunResult {
    std::string output;
    int code = -1;
};

RunResult run(const std::string& command) {
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        std::cerr << "popen failed for: " << command << "\n";
        std::exit(2);
    }
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void show_diff(const std::string& expected, const std::string& actual) {
    std::istringstream e(expected), a(actual);
    std::string el, al;
    int line = 0;
    while (true) {
        bool he = static_cast<bool>(std::getline(e, el));
        bool ha = static_cast<bool>(std::getline(a, al));
        ++line;
        if (!he && !ha) return;
        if (he != ha || el != al) {
            std::cerr << "  first difference at line " << line << "\n";
            std::cerr << "  expected: " << (he ? el : "<end of file>") << "\n";
            std::cerr << "  actual:   " << (ha ? al : "<end of file>") << "\n";
            return;
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::cerr << "usage: golden_runner <binary> <workdir> <golden-dir>\n";
        return 2;
    }
    fs::path binary = fs::absolute(argv[1]);
    fs::path golden = fs::absolute(argv[3]);
    if (chdir(argv[2]) != 0) {
        std::cerr << "cannot chdir to " << argv[2] << "\n";
        return 2;
    }

    std::vector<fs::path> cases;
    for (const auto& entry : fs::directory_iterator(golden))
        if (entry.path().extension() == ".cmd") cases.push_back(entry.path());
    std::sort(cases.begin(), cases.end());
    if (cases.empty()) {
        std::cerr << "no .cmd files in " << golden << "\n";
        return 2;
    }

    int failures = 0;
    for (const auto& cmd_path : cases) {
        const std::string name = cmd_path.stem().string();
        const std::string args = strip(slurp(cmd_path));
        fs::path out_path = cmd_path.parent_path() / (name + ".out");
        fs::path code_path = cmd_path.parent_path() / (name + ".code");
        const std::string expected = slurp(out_path);
        int expected_code = 0;
        if (fs::exists(code_path)) expected_code = std::stoi(strip(slurp(code_path)));

        RunResult r = run(binary.string() + " " + args + " 2>/dev/null");
        bool ok = r.output == expected && r.code == expected_code;
        std::cout << (ok ? "PASS" : "FAIL") << " " << name << "\n";
        if (!ok) {
            ++failures;
            if (r.code != expected_code)
                std::cerr << "  exit status " << r.code << ", expected " << expected_code << "\n";
            if (r.output != expected) show_diff(expected, r.output);
        }
    }
    if (failures) std::cerr << failures << " golden case(s) failed\n";
    return failures ? 1 : 0;
}
