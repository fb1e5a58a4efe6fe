// SPDX-License-Identifier: Apache-2.0
//
// eewf - energy-efficient zoned water-filling for massive MIMO downlink
// Copyright (C) 2026 The eewf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef EEWF_ERROR_HPP
#define EEWF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace eewf {

// Invalid scenario or sweep parameters. `key()` names the offending field.
class ConfigError : public std::invalid_argument
{
public:
    ConfigError(std::string key, const std::string &what)
        : std::invalid_argument(what), key_(std::move(key)) {}

    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

// The stacked representative channel stayed rank deficient after all
// regeneration attempts.
class DegenerateChannel : public std::runtime_error
{
public:
    DegenerateChannel() : std::runtime_error("degenerate channel") {}
};

} // namespace eewf

#endif
