#include "resonance/errors.hpp"

#include <sstream>

namespace resonance {

namespace {
std::string singularity_message(double tau, double omega)
{
    std::ostringstream os;
    os.precision(17);
    os << "evaluation too close to resonance: tau=" << tau << ", omega(tau)=" << omega;
    return os.str();
}
}  // namespace

SingularityError::SingularityError(double tau, double omega)
    : std::domain_error(singularity_message(tau, omega)), tau_(tau), omega_(omega)
{
}

AccuracyError::AccuracyError(const std::string& what, double estimate, double error_estimate)
    : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate)
{
}

TrajectoryError::TrajectoryError(const std::string& what, double tau, double action, double chi)
    : std::runtime_error(what), tau_(tau), action_(action), chi_(chi)
{
}

}  // namespace resonance
