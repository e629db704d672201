#pragma once

#include <stdexcept>
#include <string>

namespace strichartz {

// Caller passed arguments that violate an operation's preconditions.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of the operation (k=0, q<1, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A grid cannot resolve the requested bandwidth (Nyquist / memory ceiling).
struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Time quadrature hit its doubling cap without meeting the tolerance.
// Carries the last two values so callers can judge how far apart they were.
struct convergence_error : std::runtime_error {
    double previous;
    double last;
    convergence_error(const std::string& msg, double prev, double curr)
        : std::runtime_error(msg), previous(prev), last(curr) {}
};

// Experiment configuration violates an estimate's hypotheses. `field` names
// the offending entry so the CLI can emit field-level messages.
struct config_error : std::runtime_error {
    std::string field;
    config_error(std::string fld, const std::string& msg)
        : std::runtime_error(fld + ": " + msg), field(std::move(fld)) {}
};

// Bad data fed to a post-processing step (e.g. nonpositive value in a log fit).
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// NLS blow-up guard tripped.
struct blowup_error : std::runtime_error {
    double t;
    double sup_norm;
    blowup_error(const std::string& msg, double time, double sup)
        : std::runtime_error(msg), t(time), sup_norm(sup) {}
};

}  // namespace strichartz
