#pragma once

#include <stdexcept>
#include <string>

namespace kr {

// Error categories surfaced by the library.  The CLI maps these onto its
// exit-code contract, so new categories should be added here rather than
// thrown as bare runtime_errors.
enum class errc {
    unsupported_algebra,  // unknown (series, rank) combination
    precondition,         // caller violated a documented precondition
    mismatch,             // incompatible operands (algebras, totals, sums)
    incomparable,         // arguments not related in the relevant order
    overflow,             // 64-bit integer overflow detected
    budget_exceeded,      // term budget exhausted during an expansion
    fm_inconsistency,     // monomial completion failed to close
    not_a_character,      // decomposition did not terminate on a character
    search_truncated,     // search-space cap hit before exhausting candidates
    bad_cache,            // cache file unreadable or structurally invalid
    violation,            // a verified identity failed to hold
};

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string &what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string &what) { throw Error(code, what); }

}  // namespace kr
