// SPDX-License-Identifier: Apache-2.0
//
// rismse: MSE transceiver design for RIS-aided MIMO links with hardware impairments
// Copyright (C) 2026 The rismse authors
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

#ifndef RISMSE_ERROR_HPP
#define RISMSE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rismse
{

// Argument outside the mathematical domain of an operation (negative concentration, zero distance, ...)
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Matrix / vector dimensions do not conform
class ShapeError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Non-finite intermediate or singular system; `term()` names the offending quantity
class NumericError : public std::runtime_error
{
public:
    NumericError(const std::string &term, const std::string &what)
        : std::runtime_error(what), term_(term) {}
    const std::string &term() const noexcept { return term_; }

private:
    std::string term_;
};

// An iterative solver failed to reach its target
class SolverError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Experiment configuration could not be loaded or violates an invariant
class ConfigError : public std::runtime_error
{
public:
    ConfigError(const std::string &field, const std::string &what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(field) {}
    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

// File system failure; carries the path
class IoError : public std::runtime_error
{
public:
    IoError(const std::string &path, const std::string &what)
        : std::runtime_error(path + ": " + what), path_(path) {}
    const std::string &path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace rismse

#endif
