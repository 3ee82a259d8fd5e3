#include "psmbv/report.hpp"

#include <sstream>

namespace psmbv {

std::string render_text(const CheckReport& report, bool full_witness) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    os << (c.pass ? "PASS" : "FAIL") << ' ' << c.name;
    if (!c.note.empty()) os << "  (" << c.note << ')';
    os << '\n';
    if (full_witness && !c.witness.empty()) os << "  witness: " << c.witness << '\n';
  }
  for (const auto& d : report.deviations) os << "note: " << d << '\n';
  return os.str();
}

}  // namespace psmbv
