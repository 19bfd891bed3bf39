#pragma once

#include <stdexcept>
#include <string>

namespace parahoric {

/* Error taxonomy.
 *   DomainError   - caller broke a precondition (bad input, mismatched groups).
 *   ResourceError - a configured budget (element count, word count) would be
 *                   exceeded; message names the required amount.
 *   InternalError - an invariant the implementation relies on failed.
 * Verification failures are data (see verify.hpp), not exceptions.
 */
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace parahoric
