#include "swapfree/error.hpp"

namespace swapfree {

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace swapfree
