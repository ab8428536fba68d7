#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string out_path = "cli_test_output.tmp";
  const std::string cmd =
      std::string(NYQR_CLI_PATH) + " " + args + " > " + out_path + " 2> cli_test_err.tmp";
  const int raw = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.output = buf.str();
  std::remove(out_path.c_str());
  std::remove("cli_test_err.tmp");
  return result;
}

}  // namespace

TEST_CASE("approx on the worked example emits the documented csv") {
  const auto r = run_cli(
      "approx --fixture example1 --rank 1 --columns 1,2 --trials 1 "
      "--methods standard,modified --norms trace,frobenius");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("method,selection,m,trial,norm,rel_error,seconds\n", 0) == 0);
  CHECK(r.output.find("standard,fixed,2,0,trace,0.9900990099") != std::string::npos);
  CHECK(r.output.find("modified,fixed,2,0,trace,0.009900990099") !=
        std::string::npos);
  CHECK(r.output.find("modified,fixed,2,0,frobenius,0.009999500037") !=
        std::string::npos);
}

TEST_CASE("verification subcommand succeeds on a small batch") {
  const auto r = run_cli("verify --suite thm2 --instances 5 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("suite,instance,passed,lhs,rhs,slack\n", 0) == 0);
  CHECK(r.output.find("thm2,0,1,") != std::string::npos);
}

TEST_CASE("timing subcommand emits the timing schema") {
  const auto r = run_cli(
      "time --fixture remark2 --rank 1 --m-grid 2 --trials 3 "
      "--methods standard,modified");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("method,selection,m,mean_seconds,std_seconds,trials\n", 0) ==
        0);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("approx --fixture example1 --rank 0").exit_code == 1);
  CHECK(run_cli("approx --no-such-flag").exit_code == 1);
  CHECK(run_cli("approx").exit_code == 1);  // no fixture and no data file
  CHECK(run_cli("verify --suite nope").exit_code == 1);
  CHECK(run_cli("approx --data /nonexistent.libsvm --rank 1").exit_code == 1);
}

TEST_CASE("results can be written to a file via --out") {
  const std::string path = "cli_out_test.csv";
  const auto r = run_cli("approx --fixture example1 --rank 1 --columns 1,2 "
                         "--trials 1 --out " + path);
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "method,selection,m,trial,norm,rel_error,seconds");
  in.close();
  std::remove(path.c_str());
}
