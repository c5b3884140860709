// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_ERROR_HPP
#define MDVIEW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mdv {

/// Base class for all errors thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class arity_mismatch : public error {
 public:
  using error::error;
};

class invalid_extent : public error {
 public:
  using error::error;
};

class rank_out_of_bounds : public error {
 public:
  using error::error;
};

class offset_overflow : public error {
 public:
  using error::error;
};

class invalid_stride : public error {
 public:
  using error::error;
};

class not_strided : public error {
 public:
  using error::error;
};

class index_out_of_bounds : public error {
 public:
  using error::error;
};

class insufficient_span : public error {
 public:
  using error::error;
};

class unsupported_layout : public error {
 public:
  using error::error;
};

class extents_mismatch : public error {
 public:
  using error::error;
};

class extent_too_small : public error {
 public:
  using error::error;
};

class spec_arity_mismatch : public error {
 public:
  using error::error;
};

class spec_out_of_bounds : public error {
 public:
  using error::error;
};

class config_error : public error {
 public:
  using error::error;
};

class checksum_mismatch : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

class division_by_zero : public error {
 public:
  using error::error;
};

}  // namespace mdv

#endif  // MDVIEW_ERROR_HPP
