#ifndef DVLIGHT_ERRORS_HPP
#define DVLIGHT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dvlight {

// Bad physical or structural input (negative depth, empty grid, ...).
class invalid_parameter_error : public std::invalid_argument {
public:
    explicit invalid_parameter_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Base for failures of the numerics themselves (exit code 3 in the CLI).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

class degenerate_pole_error : public numerical_error {
public:
    explicit degenerate_pole_error(const std::string& msg) : numerical_error(msg) {}
};

class undefined_contrast_error : public numerical_error {
public:
    explicit undefined_contrast_error(const std::string& msg) : numerical_error(msg) {}
};

class peak_at_edge_error : public numerical_error {
public:
    explicit peak_at_edge_error(const std::string& msg) : numerical_error(msg) {}
};

class zero_transfer_error : public numerical_error {
public:
    explicit zero_transfer_error(const std::string& msg) : numerical_error(msg) {}
};

class phase_jump_error : public numerical_error {
public:
    explicit phase_jump_error(const std::string& msg) : numerical_error(msg) {}
};

class aliasing_error : public numerical_error {
public:
    explicit aliasing_error(const std::string& msg) : numerical_error(msg) {}
};

class zero_energy_error : public numerical_error {
public:
    explicit zero_energy_error(const std::string& msg) : numerical_error(msg) {}
};

class edge_leakage_error : public numerical_error {
public:
    explicit edge_leakage_error(const std::string& msg) : numerical_error(msg) {}
};

class fit_failure_error : public numerical_error {
public:
    explicit fit_failure_error(const std::string& msg) : numerical_error(msg) {}
};

class degenerate_data_error : public numerical_error {
public:
    explicit degenerate_data_error(const std::string& msg) : numerical_error(msg) {}
};

class rank_deficiency_error : public numerical_error {
public:
    explicit rank_deficiency_error(const std::string& msg) : numerical_error(msg) {}
};

class out_of_validity_error : public numerical_error {
public:
    explicit out_of_validity_error(const std::string& msg) : numerical_error(msg) {}
};

class inconsistency_error : public numerical_error {
public:
    explicit inconsistency_error(const std::string& msg) : numerical_error(msg) {}
};

// Configuration / input-file problems (exit code 2 in the CLI).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dvlight

#endif
