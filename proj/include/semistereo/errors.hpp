// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace semistereo {

// Common base so the CLI can map failures to exit codes in one place.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input: config values, unknown keys, missing input files.
struct ConfigError : Error {
  using Error::Error;
};

// A constructed object violates one of its invariants.
struct ValidationError : Error {
  using Error::Error;
};

// Text asset could not be parsed (OBJ meshes, calib files). Messages carry
// the offending line number.
struct ParseError : Error {
  using Error::Error;
};

// Mesh face without texture coordinates.
struct MissingUvError : ParseError {
  using ParseError::ParseError;
};

// Mesh face index out of range.
struct BadIndexError : ParseError {
  using ParseError::ParseError;
};

// Texture source smaller than the requested crop.
struct ImageTooSmallError : Error {
  using Error::Error;
};

// Texture directory yielded no usable images.
struct NoTexturesError : Error {
  using Error::Error;
};

// Object pool yielded no usable meshes.
struct NoMeshesError : Error {
  using Error::Error;
};

// A rendered disparity exceeded the rig's ndisp budget.
struct MaxDisparityExceededError : Error {
  using Error::Error;
};

// Malformed PFM header or truncated payload.
struct PfmParseError : ParseError {
  using ParseError::ParseError;
};

// Disparity does not fit the 16-bit fixed-point encoding.
struct DisparityOverflowError : Error {
  using Error::Error;
};

// A dataset frame is missing one of its expected files.
struct MissingOutputError : Error {
  using Error::Error;
};

// Metrics requested over an empty pixel set.
struct EmptyEvaluationError : Error {
  using Error::Error;
};

// Histograms with different bin edges cannot be compared.
struct BinMismatchError : Error {
  using Error::Error;
};

// Filesystem failure (unwritable output, refusing to clobber foreign data).
struct IoError : Error {
  using Error::Error;
};

}  // namespace semistereo
