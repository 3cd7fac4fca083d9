#pragma once

#include <stdexcept>
#include <string>

namespace wjet {

// Error kinds map onto CLI exit codes (see tools/wjet_cli.cpp).
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class precondition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class schema_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wjet
