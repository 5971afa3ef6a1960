// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

#include "cfwgan/errors.hpp"

namespace cfwgan {

void throw_domain(const std::string& what) { throw DomainError(what); }
void throw_precondition(const std::string& what) { throw PreconditionError(what); }
void throw_numeric(const std::string& what) { throw NumericError(what); }
void throw_invalid(const std::string& what) { throw InvalidArgument(what); }

const char* version() noexcept { return CFWGAN_VERSION; }

}  // namespace cfwgan
