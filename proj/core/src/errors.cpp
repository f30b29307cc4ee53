#include "attoqo/errors.hpp"

namespace attoqo {

const char* errc_name(errc code) {
  switch (code) {
    case errc::domain: return "domain";
    case errc::dimension: return "dimension";
    case errc::grid: return "grid";
    case errc::structure: return "structure";
    case errc::truncation: return "truncation";
    case errc::numeric: return "numeric";
    case errc::parse: return "parse";
    case errc::selection: return "selection";
  }
  return "unknown";
}

} // namespace attoqo
