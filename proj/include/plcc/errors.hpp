#pragma once

#include <stdexcept>
#include <string>

namespace plcc {

// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Too few observations to identify a parameter.
class insufficient_data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Observations present but carrying no information (e.g. all at the threshold).
class degenerate_data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file.
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok) throw domain_error(what);
}

}  // namespace detail

}  // namespace plcc
