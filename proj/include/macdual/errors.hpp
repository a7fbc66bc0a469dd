#pragma once

#include <stdexcept>
#include <string>

namespace macdual {

// Malformed polynomial or file input; positions are 1-based.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, int line, int column)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class dimension_error : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class usage_error : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class invalid_semigroup_error : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class invalid_ideal_error : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Dual module of the given Artinian quotient is not cyclic.
class not_gorenstein_error : public std::runtime_error {
public:
    not_gorenstein_error(const std::string& msg, long long socle_dimension)
        : std::runtime_error(msg), socle_dimension_(socle_dimension) {}
    long long socle_dimension() const noexcept { return socle_dimension_; }

private:
    long long socle_dimension_;
};

class admissibility_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class bad_z_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "Cannot decide at this truncation" -- distinct from hard failures.
class inconclusive_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class degree_cap_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace macdual
