// Copyright 2025-2026 The trizx developers
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

#include "trizx/cli.hpp"

#include "trizx/synth.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace trizx;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("trizx_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("build then verify a phase gadget succeeds") {
  const fs::path dir = fresh_dir("gadget");
  const auto build = run_cli({"build", "phase-gadget", "-n", "2", "--alpha", "1", "--beta", "2",
                              "-o", dir.string()});
  CHECK(build.code == cli::kExitOk);
  CHECK(fs::exists(dir / "circuit.txt"));
  CHECK(fs::exists(dir / "diagram.json"));
  CHECK(fs::exists(dir / "counts.json"));
  const auto verify = run_cli({"verify", dir.string(), "--tol", "1e-9"});
  CHECK(verify.code == cli::kExitOk);
}

TEST_CASE("ccz emulation reports R-count 3 through the CLI") {
  const fs::path dir = fresh_dir("ccz");
  CHECK(run_cli({"build", "ccz-emulation", "-o", dir.string()}).code == cli::kExitOk);
  const auto count = run_cli({"count", dir.string()});
  CHECK(count.code == cli::kExitOk);
  CHECK(count.out.find("\"r_count\": 3") != std::string::npos);
  CHECK(count.out.find("\"t_count\": 0") != std::string::npos);
  CHECK(run_cli({"verify", dir.string()}).code == cli::kExitOk);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run_cli({"build", "no-such-construction", "-o", "/tmp/x"}).code == cli::kExitUsage);
  CHECK(run_cli({"build", "phase-multiplier", "-n", "1", "--alpha", "1/3", "-o", "/tmp/x"}).code ==
        cli::kExitUsage);
  CHECK(run_cli({"build", "phase-gadget", "--alpha", "0.5", "-o", "/tmp/x"}).code ==
        cli::kExitUsage);
  CHECK(run_cli({}).code == cli::kExitUsage);
}

TEST_CASE("verification failures exit with code 1") {
  const fs::path dir = fresh_dir("tampered");
  REQUIRE(run_cli({"build", "phase-gadget", "-n", "2", "--alpha", "1/5", "--beta", "2/5", "-o",
                   dir.string()})
              .code == cli::kExitOk);
  // Sneak an extra T gate into the written circuit; the oracle check must
  // now reject it.
  std::ofstream f(dir / "circuit.txt", std::ios::app);
  f << "T 0\n";
  f.close();
  CHECK(run_cli({"verify", dir.string()}).code == cli::kExitVerifyFailed);
}

TEST_CASE("malformed inputs exit with code 3") {
  const fs::path dir = fresh_dir("bad");
  {
    std::ofstream f(dir / "d.json");
    f << "{ not json";
  }
  CHECK(run_cli({"simplify", (dir / "d.json").string()}).code == cli::kExitBadInput);
  CHECK(run_cli({"count", (dir / "missing.txt").string()}).code == cli::kExitBadInput);
}

TEST_CASE("every library construction is reachable from the CLI") {
  const fs::path dir = fresh_dir("golden");
  for (const std::string& name : synth::construction_names()) {
    std::vector<std::string> args{"build", name, "-o", (dir / name).string()};
    if (name == "phase-gadget" || name == "phase-multiplier") {
      args.insert(args.end(), {"-n", "2", "--alpha", "1/5", "--beta", "2/5"});
    } else if (name == "qubit-diag") {
      args.insert(args.end(), {"--alphas", "0,1/5,2/5,1/2"});
    } else if (name == "controlled-phase" || name == "controlled-on") {
      args.insert(args.end(), {"--theta", "1/5", "--phi", "2/5", "--level", "1"});
    } else if (name == "ket2-qubit-phase" || name == "ccu-emulation") {
      args.insert(args.end(), {"--eta", "3/2"});
    } else if (name == "square-phase" || name == "square-phase-pair") {
      args.insert(args.end(), {"--alpha", "1/5"});
    }
    INFO(name);
    CHECK(run_cli(args).code == cli::kExitOk);
    CHECK(run_cli({"verify", (dir / name).string()}).code == cli::kExitOk);
  }
}

TEST_CASE("verify-rules reports are byte-identical for a fixed seed") {
  const auto a = run_cli({"verify-rules", "--trials", "10", "--seed", "7"});
  const auto b = run_cli({"verify-rules", "--trials", "10", "--seed", "7"});
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  const auto c = run_cli({"verify-rules", "--trials", "10", "--seed", "8"});
  CHECK(c.code == cli::kExitOk);
}

TEST_CASE("build outputs are byte-stable across runs") {
  const fs::path d1 = fresh_dir("stable1");
  const fs::path d2 = fresh_dir("stable2");
  for (const auto& d : {d1, d2})
    REQUIRE(run_cli({"build", "phase-multiplier", "-n", "3", "--alpha", "1/3", "-o", d.string()})
                .code == cli::kExitOk);
  for (const char* f : {"circuit.txt", "diagram.json", "counts.json", "meta.json"}) {
    std::ifstream a(d1 / f), b(d2 / f);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
  }
}

TEST_CASE("radians flag converts to exact rationals") {
  const fs::path dir = fresh_dir("rad");
  // 2*pi/3 radians = 1 omega unit.
  const auto ok = run_cli({"build", "phase-gadget", "-n", "1", "--alpha", "2.0943951023931953",
                           "--beta", "4.1887902047863905", "--radians", "-o", dir.string()});
  CHECK(ok.code == cli::kExitOk);
  CHECK(run_cli({"verify", dir.string()}).code == cli::kExitOk);
  const auto bad = run_cli({"build", "phase-gadget", "-n", "1", "--alpha", "1.234567", "--radians",
                            "-o", dir.string()});
  CHECK(bad.code == cli::kExitUsage);
}

TEST_CASE("render and export-matrix work on built artifacts") {
  const fs::path dir = fresh_dir("render");
  REQUIRE(run_cli({"build", "square-control", "-o", dir.string()}).code == cli::kExitOk);
  const auto dot = run_cli({"render", (dir / "diagram.json").string(), "--dot"});
  CHECK(dot.code == cli::kExitOk);
  CHECK(dot.out.find("graph zx {") != std::string::npos);
  const auto npy = run_cli({"export-matrix", (dir / "circuit.txt").string(), "-o",
                            (dir / "m.npy").string()});
  CHECK(npy.code == cli::kExitOk);
  const auto csv = run_cli({"export-matrix", (dir / "diagram.json").string(), "-o",
                            (dir / "m.csv").string(), "--format", "csv"});
  CHECK(csv.code == cli::kExitOk);
  CHECK(fs::exists(dir / "m.npy"));
  CHECK(fs::exists(dir / "m.csv"));
  const auto simp = run_cli({"simplify", (dir / "diagram.json").string(), "-o",
                             (dir / "simplified.json").string()});
  CHECK(simp.code == cli::kExitOk);
  CHECK(fs::exists(dir / "simplified.json"));
}

TEST_CASE("replay-proof consumes the shipped scripts") {
  const fs::path proofs = fs::path(TRIZX_SOURCE_DIR) / "proofs";
  std::vector<std::string> args{"replay-proof"};
  for (const auto& e : fs::directory_iterator(proofs))
    if (e.path().extension() == ".json") args.push_back(e.path().string());
  REQUIRE(args.size() > 1);
  CHECK(run_cli(args).code == cli::kExitOk);
  CHECK(run_cli({"replay-proof", "--builtin"}).code == cli::kExitOk);
}
