// scesep/base/error.h

// Copyright 2026  The scesep authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SCESEP_BASE_ERROR_H_
#define SCESEP_BASE_ERROR_H_

#include <sstream>
#include <stdexcept>
#include <string>

namespace scesep {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace scesep

// Throws scesep::Error with a streamed message when cond is false.
#define SCESEP_CHECK(cond, msg)                 \
  do {                                          \
    if (!(cond)) {                              \
      std::ostringstream scesep_check_os_;      \
      scesep_check_os_ << msg;                  \
      throw ::scesep::Error(scesep_check_os_.str()); \
    }                                           \
  } while (0)

#define SCESEP_FAIL(msg) SCESEP_CHECK(false, msg)

#endif  // SCESEP_BASE_ERROR_H_
