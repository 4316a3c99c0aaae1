#include "logicmine/truth_table.hpp"

namespace logicmine {

std::string to_bit_string(TruthTable tt) {
  std::string out(kInputStates, '0');
  for (unsigned k = 0; k < kInputStates; ++k) {
    if (tt.bit(k)) out[k] = '1';
  }
  return out;
}

}  // namespace logicmine
