// afm/base/logging.h

// Copyright 2026  The AFM Authors

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

#ifndef AFM_BASE_LOGGING_H_
#define AFM_BASE_LOGGING_H_

#include <string>

namespace afm {

// Verbosity is controlled by the AFM_LOG_LEVEL environment variable:
// one of "error", "info" (default), "debug".
enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level();

void log_error(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

// Warnings report degraded-but-continuing conditions; they are printed at
// every verbosity level.
void log_warn(const std::string& msg);

}  // namespace afm

#endif  // AFM_BASE_LOGGING_H_
