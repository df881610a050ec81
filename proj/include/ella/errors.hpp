#ifndef ELLA_ERRORS_HPP
#define ELLA_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace ella {

// Base class for all domain errors thrown by this library.  Anything that is
// not a usage bug (those are asserts) derives from here so callers can catch
// one type at the CLI boundary.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct invalid_modular_param : error {
    explicit invalid_modular_param(const std::string& msg) : error(msg) {}
};

// Evaluation landed within the relative guard band of a pole or zero.
struct near_singular : error {
    explicit near_singular(const std::string& msg) : error(msg) {}
};

struct dimension_mismatch : error {
    explicit dimension_mismatch(const std::string& msg) : error(msg) {}
};

struct overflow_error : error {
    explicit overflow_error(const std::string& msg) : error(msg) {}
};

struct not_primitive : error {
    explicit not_primitive(const std::string& msg) : error(msg) {}
};

struct not_transversal : error {
    explicit not_transversal(const std::string& msg) : error(msg) {}
};

struct rank_deficient : error {
    explicit rank_deficient(const std::string& msg) : error(msg) {}
};

struct not_unimodular : error {
    explicit not_unimodular(const std::string& msg) : error(msg) {}
};

struct malformed_forest : error {
    explicit malformed_forest(const std::string& msg) : error(msg) {}
};

struct size_limit : error {
    explicit size_limit(const std::string& msg) : error(msg) {}
};

// Weight vector fails a convenience test; `witness` lists the offending
// subset of hyperplane (or coordinate) indices.
struct not_convenient : error {
    std::vector<int> witness;
    not_convenient(const std::string& msg, std::vector<int> w)
        : error(msg), witness(std::move(w)) {}
};

// A dual solution coordinate landed on the lattice, so the sigma factor for
// it does not exist.
struct not_admissible : error {
    explicit not_admissible(const std::string& msg) : error(msg) {}
};

struct on_hyperplane : error {
    explicit on_hyperplane(const std::string& msg) : error(msg) {}
};

// Transition matrix numerically singular (scaled |det| under threshold).
struct degenerate_m : error {
    explicit degenerate_m(const std::string& msg) : error(msg) {}
};

// No probe direction found clear of every hyperplane kernel.
struct bad_direction : error {
    explicit bad_direction(const std::string& msg) : error(msg) {}
};

struct duplicate_hyperplane : error {
    explicit duplicate_hyperplane(const std::string& msg) : error(msg) {}
};

struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

} // namespace ella

#endif
