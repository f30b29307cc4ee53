#pragma once

#include <stdexcept>
#include <string>

namespace attoqo {

// Error taxonomy shared by all modules. The CLI maps categories to process
// exit codes: parse -> 2, selection -> 4, everything else -> 3.
enum class errc {
  domain,     // argument outside its documented range
  dimension,  // mode count / shape mismatch
  grid,       // grid resolution or Nyquist violation
  structure,  // structural requirement (hermiticity, trace, ordering)
  truncation, // requested cutoff too small for the state
  numeric,    // non-finite values, failed factorization, zero norm
  parse,      // configuration file problems
  selection,  // post-selection efficiency below the stated floor
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }
  int exit_code() const noexcept {
    switch (code_) {
      case errc::parse: return 2;
      case errc::selection: return 4;
      default: return 3;
    }
  }

private:
  errc code_;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line = 0)
      : Error(errc::parse, line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

const char* errc_name(errc code);

inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

} // namespace attoqo
