// Evaluate a few functionals and run one verification suite.

#include <iomanip>
#include <iostream>

#include "polycm/polycm.hpp"

int main() {
  using polycm::ShiftPair;

  const ShiftPair<double> sub(0.0, 0.5), super(0.0, 2.0);
  std::cout << std::setprecision(15);
  std::cout << "x*                = " << polycm::psi_root<double>() << '\n';
  std::cout << "Theta_{0,1/2}(2)  = " << polycm::theta(sub, 2.0) << '\n';
  std::cout << "Theta_{0,2}(2)    = " << polycm::theta(super, 2.0) << '\n';
  std::cout << "theta1(1)         = " << polycm::theta1(1.0) << "  (4/pi - 1)\n";
  std::cout << "Q(3)              = " << polycm::q_ratio(3.0) << '\n';

  // 50 significant digits
  const ShiftPair<polycm::Extended> wide(polycm::Extended(0), polycm::Extended("0.5"));
  std::cout << std::setprecision(50) << "Theta_{0,1/2}(2)  = " << polycm::theta(wide, polycm::Extended(2)) << '\n';

  const auto cert = polycm::check_alternating_signs(polycm::CMTarget::Theta, sub, 0.1, 50.0, 6, 200);
  std::cout << "CM certificate    : " << polycm::to_string(cert.verdict) << '\n';

  polycm::SuiteConfig cfg;
  cfg.suites = {"ball"};
  cfg.n_max = 5;
  polycm::emit_report(polycm::run_suite(cfg), polycm::ReportFormat::Text, std::cout);
}
