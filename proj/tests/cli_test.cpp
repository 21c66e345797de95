#include <doctest.h>

#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "lsi/io.hpp"
#include "test_util.hpp"

using namespace lsi;
using lsi::test::vec;

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, const lsi::test::TempDir& tmp,
                  const std::string& tag) {
  const std::string capture = tmp.file("out-" + tag + ".txt");
  const std::string cmd = std::string(LSI_CLI_PATH) + " " + args + " > " + capture + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = read_text_file(capture);
  return r;
}

}  // namespace

TEST_CASE("help and bad invocations") {
  lsi::test::TempDir tmp("cli-usage");
  CHECK(run_cli("--help", tmp, "help").code == 0);
  CHECK(run_cli("--definitely-not-a-flag", tmp, "badflag").code == 2);
  CHECK(run_cli("train --method lsi", tmp, "missing").code == 2);  // required options absent
  CHECK(run_cli("gen-data --system nosuch --n-traj 1 --traj-len 3 --h 0.5 "
                "--domain -1,1,-1,1 --out " +
                    tmp.file("x.json"),
                tmp, "badsys")
            .code == 2);
}

TEST_CASE("data generation, training and prediction pipeline") {
  lsi::test::TempDir tmp("cli-pipe");
  const std::string ds_path = tmp.file("ds.json");

  const RunResult gen = run_cli(
      "gen-data --system pendulum --n-traj 3 --traj-len 4 --h 0.5 --h-fine 0.01 "
      "--domain -3.1,3.1,-1.2,1.2 --out " +
          ds_path,
      tmp, "gen");
  CHECK(gen.code == 0);
  const TrajectoryDataset ds = load_dataset(ds_path);
  CHECK(ds.n == 1);
  CHECK(ds.trajectories.size() == 3);
  CHECK(ds.trajectories[0].positions.size() == 4);

  // an internal step that does not divide h is rejected up front
  CHECK(run_cli("gen-data --system pendulum --n-traj 1 --traj-len 3 --h 0.5 "
                "--h-fine 0.3 --domain -1,1,-1,1 --out " +
                    tmp.file("bad.json"),
                tmp, "badh")
            .code == 2);

  const std::string model_path = tmp.file("model.json");
  const RunResult tr = run_cli("train --method lsi --epsilon 2 --data " + ds_path +
                                   " --out " + model_path,
                               tmp, "train");
  CHECK(tr.code == 0);
  CHECK(model_document_kind(model_path) == "lsi");
  const KernelModel m = load_model(model_path);
  CHECK(m.diagnostics().del_residual_inf <= 1e-6);

  // lgp-exact requires the analytic system
  CHECK(run_cli("train --method lgp-exact --data " + ds_path + " --out " +
                    tmp.file("nope.json"),
                tmp, "noexact")
            .code == 2);
  CHECK(run_cli("train --method magic --data " + ds_path + " --out " + tmp.file("m2.json"),
                tmp, "badmethod")
            .code == 2);

  const std::string traj_path = tmp.file("traj.csv");
  const RunResult p0 = run_cli("predict --model " + model_path +
                                   " --q0 0.3 --qdot0 0 --steps 0 --out " + traj_path,
                               tmp, "p0");
  CHECK(p0.code == 0);
  CHECK(read_trajectory_csv(traj_path).positions.size() == 1);

  const RunResult p5 = run_cli("predict --model " + model_path +
                                   " --q0 0.3 --qdot0 0 --steps 5 --with-velocities --out " +
                                   traj_path,
                               tmp, "p5");
  CHECK(p5.code == 0);
  const TrajectoryCsv csv = read_trajectory_csv(traj_path);
  CHECK(csv.positions.size() == 6);
  CHECK(csv.velocities.size() == 6);
  CHECK(csv.h == 0.5);

  const RunResult div = run_cli("analyze divergence --traj " + traj_path + " --bound 50",
                                tmp, "div");
  CHECK(div.code == 0);
  CHECK(div.output.find("divergence time = none") != std::string::npos);
}

TEST_CASE("alignment of a reference field with itself vanishes") {
  lsi::test::TempDir tmp("cli-nu");
  const RunResult nu = run_cli(
      "analyze nu --system-a pendulum --system-b pendulum "
      "--grid-axes 0,1 --grid-lo -1,-1 --grid-hi 1,1 --grid-res 4,4",
      tmp, "nu");
  CHECK(nu.code == 0);
  const auto pos = nu.output.find("nu = ");
  REQUIRE(pos != std::string::npos);
  // identical gradients leave only rounding in the angle computation
  CHECK(std::stod(nu.output.substr(pos + 5)) <= 1e-6);
}

TEST_CASE("divergence detection on a synthetic escaping trajectory") {
  lsi::test::TempDir tmp("cli-esc");
  std::vector<Vec> positions;
  for (int j = 0; j < 8; ++j) positions.push_back(vec({0.7 * j}));
  const std::string path = tmp.file("esc.csv");
  write_trajectory_csv(path, positions, 0.5);
  const RunResult div = run_cli("analyze divergence --traj " + path + " --bound 2", tmp, "d");
  CHECK(div.code == 0);
  // first index with |q| > 2 is j = 3, at time 1.5
  CHECK(div.output.find("divergence time = 1.5") != std::string::npos);
}
