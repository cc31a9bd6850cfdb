// dakernel: batch front end for the difference-algebra kernel.
//
//   dakernel <session-file> <command> [args...] [--ext d] [--pretty]
//   dakernel lab verify <all | product q m perm | quotient p f u>
//
// Exit codes: 0 ok, 1 parse error, 2 precondition / library error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dakernel/session.hpp"

namespace {

std::string dir_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? "." : path.substr(0, slash);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"difference-algebra kernel"};
    app.allow_extras();

    std::string session_path;
    std::string verb;
    std::vector<std::string> rest;
    int ext = 1;
    bool pretty = false;
    std::string sigma = "e";
    int factor = 0;
    int phi_frob = 0;

    app.add_option("session", session_path, "session file (or 'lab')");
    app.add_option("command", verb, "command verb");
    app.add_option("args", rest, "command arguments");
    app.add_option("--ext", ext, "extension degree for solve / nss-check");
    app.add_option("--sigma", sigma, "group element for taylor");
    app.add_option("--factor", factor, "projection factor for taylor");
    app.add_option("--phi-frob", phi_frob, "frobenius twist of phi for taylor");
    app.add_flag("--pretty", pretty, "indent the JSON report");
    app.add_flag("--json", "emit JSON (default)");

    CLI11_PARSE(app, argc, argv);

    dak::Command cmd;
    cmd.ext = ext;
    cmd.sigma = sigma;
    cmd.factor = factor;
    cmd.phi_frob = phi_frob;

    dak::Session session;
    std::string base_dir = ".";

    try {
        if (session_path == "lab") {
            // session-free form: dakernel lab verify <spec>
            cmd.verb = "lab";
            if (!verb.empty()) cmd.args.push_back(verb);
            for (auto& r : rest) cmd.args.push_back(r);
        } else {
            if (session_path.empty() || verb.empty()) {
                std::cerr << "usage: dakernel <session-file> <command> [args...]\n";
                return 2;
            }
            std::ifstream in(session_path);
            if (!in) {
                std::cerr << "cannot open session file " << session_path << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            base_dir = dir_of(session_path);
            session = dak::parse_session(buf.str(), base_dir);
            cmd.verb = verb;
            cmd.args = rest;
        }
        dak::json report = dak::execute(session, cmd, base_dir);
        std::cout << (pretty ? report.dump(2) : report.dump()) << "\n";
        return 0;
    } catch (const dak::parse_error& e) {
        dak::json report;
        report["command"] = cmd.verb;
        report["status"] = "parse-error";
        report["message"] = e.what();
        std::cout << (pretty ? report.dump(2) : report.dump()) << "\n";
        return 1;
    } catch (const dak::error& e) {
        dak::json report;
        report["command"] = cmd.verb;
        report["status"] = "error";
        report["message"] = e.what();
        std::cout << (pretty ? report.dump(2) : report.dump()) << "\n";
        return 2;
    }
}
