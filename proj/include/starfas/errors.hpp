// SPDX-License-Identifier: Apache-2.0
//
// starfas - outage and capacity analysis for phase-impaired STAR-RIS links
// with fluid-antenna users under rate splitting
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

#ifndef STARFAS_ERRORS_HPP
#define STARFAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace starfas
{
    // Argument outside the mathematical domain of a function
    struct DomainError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    // Correlation matrix is not symmetric positive semidefinite
    struct MatrixError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // Coincident nodes in the scenario geometry
    struct GeometryError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Scenario parameters outside the range where the statistical model applies
    struct ModelDomainError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    // Malformed or inconsistent scenario configuration; carries the offending key
    class ConfigError : public std::invalid_argument
    {
    public:
        ConfigError(std::string key, const std::string &what)
            : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

        const std::string &key() const noexcept { return key_; }

    private:
        std::string key_;
    };
}

#endif
