#ifndef ISOLATOR_RUN_SELFCHECK_HPP
#define ISOLATOR_RUN_SELFCHECK_HPP

#include <ostream>

namespace isolator::run {

// Runs the model invariant suite, printing one line per check. Returns the
// number of failed checks (0 means everything holds).
int run_selfcheck(std::ostream& os);

}  // namespace isolator::run

#endif  // ISOLATOR_RUN_SELFCHECK_HPP
