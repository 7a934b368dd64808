#pragma once

#include <functional>

#include "doctest.h"

#include "fspectra/error.hpp"

// Runs `body` and checks it throws fspectra::Error with the given code.
inline void check_error(fspectra::ErrorCode code, const std::function<void()>& body) {
  bool thrown = false;
  try {
    body();
  } catch (const fspectra::Error& e) {
    thrown = true;
    CHECK_MESSAGE(e.code() == code, e.what());
  }
  CHECK(thrown);
}
