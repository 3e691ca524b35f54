// Copyright 2026 The aspectrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace aspectrec {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Input file or record does not match the expected format.
class FormatError : public Error {
public:
    using Error::Error;
};

// A model reply (or other free text) could not be interpreted.
class ParseError : public Error {
public:
    using Error::Error;
};

// HTTP transport failed after exhausting retries.
class TransportError : public Error {
public:
    using Error::Error;
};

// The wire reply did not match the chat-completion schema.
class ProtocolError : public Error {
public:
    using Error::Error;
};

// Prompt rendering failed; `placeholder()` names the offending placeholder.
class RenderError : public Error {
public:
    RenderError(const std::string& what, std::string placeholder)
        : Error(what), placeholder_(std::move(placeholder)) {}
    const std::string& placeholder() const { return placeholder_; }

private:
    std::string placeholder_;
};

// A stored record failed to decode; the file has been quarantined.
class CorruptRecordError : public Error {
public:
    using Error::Error;
};

}  // namespace aspectrec
