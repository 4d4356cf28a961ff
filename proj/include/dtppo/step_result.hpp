#ifndef DTPPO_STEP_RESULT_HPP
#define DTPPO_STEP_RESULT_HPP

#include <vector>

namespace dtppo {

struct StepResult {
  std::vector<double> observation;
  double reward = 0.0;
  bool done = false;
  int steps_taken = 0;
};

}  // namespace dtppo

#endif  // DTPPO_STEP_RESULT_HPP
