#pragma once

#include <iosfwd>
#include <string>

namespace cspace::cli {

struct FetchRequest {
    std::string id;
    std::string url_template;  // contains "{id}"
    std::string out_dir;
};

/// GET the substituted URL and save the body verbatim as <out_dir>/<id>.pgn.
int cmd_fetch(const FetchRequest& request, std::ostream& out, std::ostream& err);

}  // namespace cspace::cli
