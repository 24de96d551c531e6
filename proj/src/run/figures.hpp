#ifndef ISOLATOR_RUN_FIGURES_HPP
#define ISOLATOR_RUN_FIGURES_HPP

#include <string>
#include <vector>

#include "run/csv.hpp"

namespace isolator::run {

// Data behind the bundled figure recipes, one table per panel. Parameter sets
// are fixed inside; `threads` only affects evaluation speed, never content.
std::vector<std::string> figure_names();
CsvTable make_figure(const std::string& name, int threads = 1);

}  // namespace isolator::run

#endif  // ISOLATOR_RUN_FIGURES_HPP
