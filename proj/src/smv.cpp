#include "ltloracle/smv.hpp"

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "ltloracle/errors.hpp"

namespace ltloracle {

namespace {

// format_ltl with NuSMV operator spelling: R -> V, true/false -> TRUE/FALSE.
void spec_into(const Formula& f, std::string& out) {
    switch (f.op()) {
        case Op::Atom:
            out += f.atom_name();
            return;
        case Op::True:
            out += "TRUE";
            return;
        case Op::False:
            out += "FALSE";
            return;
        default:
            break;
    }
    const char* tok = nullptr;
    switch (f.op()) {
        case Op::Not: tok = "!"; break;
        case Op::And: tok = "&"; break;
        case Op::Or: tok = "|"; break;
        case Op::Implies: tok = "->"; break;
        case Op::Next: tok = "X"; break;
        case Op::Finally: tok = "F"; break;
        case Op::Globally: tok = "G"; break;
        case Op::Until: tok = "U"; break;
        case Op::Release: tok = "V"; break;
        default: break;
    }
    out += '(';
    if (f.arity() == 1) {
        out += tok;
        out += ' ';
        spec_into(f.child(0), out);
    } else {
        spec_into(f.child(0), out);
        out += ' ';
        out += tok;
        out += ' ';
        spec_into(f.child(1), out);
    }
    out += ')';
}

} // namespace

std::string emit_smv(const KripkeStructure& k, const Formula& f) {
    for (const auto& atom : f.atoms())
        if (k.ap_index(atom) < 0)
            throw DataError("emit_smv: formula atom '" + atom + "' not in structure alphabet");
    std::ostringstream os;
    os << "MODULE main\n";
    os << "VAR\n";
    os << "  state : {";
    for (std::uint32_t s = 0; s < k.state_count(); ++s) os << (s ? ", " : "") << 's' << s;
    os << "};\n";
    os << "ASSIGN\n";
    os << "  init(state) := {";
    for (std::size_t i = 0; i < k.initial.size(); ++i) os << (i ? ", " : "") << 's' << k.initial[i];
    os << "};\n";
    os << "  next(state) :=\n";
    os << "    case\n";
    for (std::uint32_t s = 0; s < k.state_count(); ++s) {
        os << "      state = s" << s << " : {";
        for (std::size_t i = 0; i < k.succ[s].size(); ++i)
            os << (i ? ", " : "") << 's' << k.succ[s][i];
        os << "};\n";
    }
    os << "    esac;\n";
    os << "DEFINE\n";
    for (std::size_t ap = 0; ap < k.alphabet.size(); ++ap) {
        os << "  " << k.alphabet[ap] << " := ";
        bool any = false;
        for (std::uint32_t s = 0; s < k.state_count(); ++s) {
            if (!k.state_has_ap(s, static_cast<int>(ap))) continue;
            if (any) os << " | ";
            os << "state = s" << s;
            any = true;
        }
        if (!any) os << "FALSE";
        os << ";\n";
    }
    std::string spec;
    spec_into(f, spec);
    os << "LTLSPEC " << spec << '\n';
    return os.str();
}

Outcome parse_nusmv_output(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("-- specification", 0) != 0) continue;
        if (line.find(" is true") != std::string::npos) return Outcome::Holds;
        if (line.find(" is false") != std::string::npos) return Outcome::Violated;
    }
    throw UnrecognizedOutputError("no '-- specification ... is true/false' line in output");
}

std::optional<std::string> nusmv_from_env() {
    const char* path = std::getenv("LTLORACLE_NUSMV");
    if (path && *path) return std::string(path);
    return std::nullopt;
}

namespace {

// Run argv[0] with stdout+stderr redirected to out_path; SIGKILL past the
// deadline.  Returns wall seconds.
double run_with_timeout(const std::string& binary, const std::string& smv_path,
                        const std::string& out_path, double timeout_seconds) {
    const auto start = std::chrono::steady_clock::now();

    const pid_t pid = fork();
    if (pid < 0) throw SpawnError(std::string("fork failed: ") + std::strerror(errno));
    if (pid == 0) {
        const int fd = ::open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        if (fd >= 0) {
            dup2(fd, STDOUT_FILENO);
            dup2(fd, STDERR_FILENO);
            ::close(fd);
        }
        execlp(binary.c_str(), binary.c_str(), smv_path.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }

    const auto deadline = start + std::chrono::duration<double>(timeout_seconds);
    int status = 0;
    while (true) {
        const pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid) break;
        if (r < 0) throw SpawnError(std::string("waitpid failed: ") + std::strerror(errno));
        if (std::chrono::steady_clock::now() >= deadline) {
            kill(pid, SIGKILL);
            waitpid(pid, &status, 0);
            throw TimeoutError("external checker exceeded " + std::to_string(timeout_seconds) +
                               " s");
        }
        std::this_thread::sleep_for(std::chrono::microseconds(200));
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
        throw SpawnError("could not execute '" + binary + "'");
    return elapsed;
}

} // namespace

ExternalResult external_check(const KripkeStructure& k, const Formula& f,
                              const std::string& binary_path, const ExternalOptions& opts) {
    namespace fs = std::filesystem;
    if (binary_path.empty()) throw SpawnError("no external checker binary configured");

    const fs::path dir = opts.temp_dir.empty() ? fs::temp_directory_path() : fs::path(opts.temp_dir);
    fs::create_directories(dir);
    const auto tag = std::to_string(::getpid()) + "_" +
                     std::to_string(std::chrono::steady_clock::now().time_since_epoch().count());
    const fs::path smv_path = dir / ("ltloracle_" + tag + ".smv");
    const fs::path out_path = dir / ("ltloracle_" + tag + ".out");

    {
        std::ofstream out(smv_path);
        if (!out) throw IoError("cannot write " + smv_path.string());
        out << emit_smv(k, f);
    }

    struct Cleanup {
        fs::path a, b;
        bool keep;
        ~Cleanup() {
            if (keep) return;
            std::error_code ec;
            fs::remove(a, ec);
            fs::remove(b, ec);
        }
    } cleanup{smv_path, out_path, opts.keep_temps};

    const double elapsed =
        run_with_timeout(binary_path, smv_path.string(), out_path.string(), opts.timeout_seconds);

    std::ifstream in(out_path);
    std::stringstream captured;
    captured << in.rdbuf();
    return {parse_nusmv_output(captured.str()), elapsed};
}

} // namespace ltloracle
