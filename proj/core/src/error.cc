// Copyright 2026 The dfpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dfpsim/error.h"

namespace dfpsim {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return "invalid input";
    case ErrorKind::kInvalidConfig:
      return "invalid config";
    case ErrorKind::kCapacity:
      return "capacity exceeded";
    case ErrorKind::kMalformedPayload:
      return "malformed payload";
    case ErrorKind::kUnsupportedMetric:
      return "unsupported metric";
    case ErrorKind::kIo:
      return "i/o error";
  }
  return "error";
}

void Fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace dfpsim
