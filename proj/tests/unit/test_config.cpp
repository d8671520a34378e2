// Copyright 2026 The qthermo Authors
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


#include <doctest.h>

#include <functional>

#include "core/config.hpp"
#include "core/types.hpp"

using namespace qthermo;
using qthermo::config::Config;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::io;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("typed getters") {
  Config c = Config::parse("[a]\nx = 1.5\nn = 7\nname = fock\nlist = 1, 2.5 ,3\n");
  CHECK(c.get_double("a.x") == 1.5);
  CHECK(c.get_int("a.n") == 7);
  CHECK(c.get_string("a.name") == "fock");
  CHECK(c.get_list("a.list") == std::vector<double>{1.0, 2.5, 3.0});
  CHECK(c.get_double("a.missing", 4.0) == 4.0);
  CHECK_NOTHROW(c.finish());
}

TEST_CASE("malformed values") {
  Config c = Config::parse("[a]\nx = 1.5abc\nn = 2.5\nl = 1,,2\ninf = inf\n");
  CHECK(code_of([&] { c.get_double("a.x"); }) == ErrorCode::config);
  CHECK(code_of([&] { c.get_int("a.n"); }) == ErrorCode::config);
  CHECK(code_of([&] { c.get_list("a.l"); }) == ErrorCode::config);
  CHECK(code_of([&] { c.get_double("a.inf"); }) == ErrorCode::config);
  CHECK(code_of([&] { c.get_double("a.nothere"); }) == ErrorCode::config);
}

TEST_CASE("unknown keys are rejected") {
  Config c = Config::parse("[a]\nx = 1\ntypo = 2\n");
  c.get_double("a.x");
  CHECK(code_of([&] { c.finish(); }) == ErrorCode::config);
  Config bare = Config::parse("x = 1\n[a]\ny = 2\n");
  bare.get_double("a.y");
  CHECK(code_of([&] { bare.finish(); }) == ErrorCode::config);
  Config stray = Config::parse("[bogus]\nk = 1\n");
  CHECK(code_of([&] { stray.finish(); }) == ErrorCode::config);
}

TEST_CASE("empty sections are ignored") {
  Config c = Config::parse("[state]\n[bogus]\n");
  c.get_double("state.alpha", 1.0);
  CHECK_NOTHROW(c.finish());
}

TEST_CASE("syntax errors and missing files") {
  CHECK(code_of([] { Config::parse("[a\nx = 1\n"); }) == ErrorCode::config);
  CHECK(code_of([] { Config::parse("[a]\nx = 1\nx = 2\n"); }) == ErrorCode::config);
  CHECK(code_of([] { Config::load("/nonexistent/qthermo.ini"); }) == ErrorCode::config);
}

TEST_CASE("sections keep file order") {
  Config c = Config::parse("[stage_b]\nomega = 1\n[cycle]\nhold = 1\n[stage_a]\nomega = 2\n");
  CHECK(c.sections() == std::vector<std::string>{"stage_b", "cycle", "stage_a"});
}

}  // TEST_SUITE
