#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>

#include <httplib.h>

#include "commands.hpp"
#include "cspace/cli.hpp"

namespace cspace::cli {

namespace {

struct Url {
    std::string origin;  // scheme://host[:port]
    std::string target;  // path and query, starting with '/'
};

std::optional<Url> split_url(const std::string& url) {
    static const std::regex re(R"(^(https?://[^/?#]+)([/?][^#]*)?$)", std::regex::icase);
    std::smatch m;
    if (!std::regex_match(url, m, re)) return std::nullopt;
    Url u{m[1].str(), m[2].str()};
    if (u.target.empty()) u.target = "/";
    if (u.target.front() == '?') u.target.insert(u.target.begin(), '/');
    return u;
}

}  // namespace

int cmd_fetch(const FetchRequest& request, std::ostream& out, std::ostream& err) {
    static const std::regex id_re(R"([A-Za-z0-9_.-]+)");
    if (!std::regex_match(request.id, id_re) || request.id == "." || request.id == "..") {
        err << "error: game id must consist of letters, digits, '_', '.' or '-'\n";
        return kUsage;
    }
    const std::string& tmpl = request.url_template;
    if (tmpl.find("{id}") == std::string::npos) {
        err << "error: URL template must contain {id}\n";
        return kUsage;
    }
    std::string url = tmpl;
    for (auto p = url.find("{id}"); p != std::string::npos; p = url.find("{id}", p + request.id.size())) {
        url.replace(p, 4, request.id);
    }
    auto parts = split_url(url);
    if (!parts) {
        err << "error: not an http(s) URL: " << url << "\n";
        return kUsage;
    }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (parts->origin.compare(0, 8, "https://") == 0 || parts->origin.compare(0, 8, "HTTPS://") == 0) {
        err << "error: this build has no TLS support; use an http:// template\n";
        return kUsage;
    }
#endif

    httplib::Client client(parts->origin);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(30, 0);
    client.set_follow_location(true);
    auto res = client.Get(parts->target);
    if (!res) {
        err << "error: request to " << url << " failed: " << httplib::to_string(res.error()) << "\n";
        return kNetwork;
    }
    if (res->status < 200 || res->status >= 300) {
        err << "error: " << url << " returned HTTP " << res->status << "\n";
        return kNetwork;
    }
    if (res->body.empty()) {
        err << "error: " << url << " returned an empty body\n";
        return kNetwork;
    }

    std::error_code ec;
    std::filesystem::create_directories(request.out_dir, ec);
    const auto path = std::filesystem::path(request.out_dir) / (request.id + ".pgn");
    std::ofstream f(path, std::ios::binary);
    f.write(res->body.data(), static_cast<std::streamsize>(res->body.size()));
    if (!f) {
        err << "error: cannot write " << path.string() << "\n";
        return kUsage;
    }
    out << path.string() << "\n";
    return kOk;
}

}  // namespace cspace::cli
