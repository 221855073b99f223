#pragma once

#include <stdexcept>
#include <string>

namespace catalysis {

// Error categories map one-to-one onto CLI exit codes:
//   input_error -> 2, infeasible_error -> 3, size_cap_error -> 4.

class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class infeasible_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class size_cap_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace catalysis
